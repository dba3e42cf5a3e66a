//! Reference tables for the four benchmark problems: the printed values
//! the golden suites compare against, transcribed at source precision.
//!
//! Solution tables store rows as (mid, upper) pairs of the printed triple
//! (0, mid, upper); table 3 keeps the template print order, whose entries
//! are unsorted once the cosine factor goes negative.

/// (alpha, h) column order shared by tables 1 and 2.
pub const TABLE12_COLUMNS: [(f64, f64); 6] = [
    (0.3, 0.2),
    (0.3, 0.02),
    (0.6, 0.2),
    (0.6, 0.02),
    (0.9, 0.2),
    (0.9, 0.02),
];

/// Widening benchmark, iterates k = 1..=10 per column: (mid, upper).
pub const TABLE1: [[(f64, f64); 6]; 10] = [
    [
        (0.617034, 0.925551),
        (0.309249, 0.463874),
        (0.380731, 0.571096),
        (0.0956352, 0.143453),
        (0.234924, 0.352386),
        (0.0295752, 0.0443627),
    ],
    [
        (1.23407, 1.8511),
        (0.618499, 0.927748),
        (0.761462, 1.14219),
        (0.19127, 0.286906),
        (0.469848, 0.704771),
        (0.0591503, 0.0887255),
    ],
    [
        (1.8511, 2.77665),
        (0.927748, 1.39162),
        (1.14219, 1.71329),
        (0.286906, 0.430359),
        (0.704771, 1.05716),
        (0.0887255, 0.133088),
    ],
    [
        (2.46814, 3.7022),
        (1.237, 1.8555),
        (1.52292, 2.28438),
        (0.382541, 0.573811),
        (0.939695, 1.40954),
        (0.118301, 0.177451),
    ],
    [
        (3.08517, 4.62775),
        (1.54625, 2.31937),
        (1.90365, 2.85548),
        (0.478176, 0.717264),
        (1.17462, 1.76193),
        (0.147876, 0.221814),
    ],
    [
        (3.7022, 5.5533),
        (1.8555, 2.78325),
        (2.28438, 3.42658),
        (0.573811, 0.860717),
        (1.40954, 2.11431),
        (0.177451, 0.266176),
    ],
    [
        (4.31924, 6.47886),
        (2.16475, 3.24712),
        (2.66512, 3.99767),
        (0.669447, 1.00417),
        (1.64447, 2.4667),
        (0.207026, 0.310539),
    ],
    [
        (4.93627, 7.40441),
        (2.474, 3.71099),
        (3.04585, 4.56877),
        (0.765082, 1.14762),
        (1.87939, 2.81909),
        (0.236601, 0.354902),
    ],
    [
        (5.5533, 8.32996),
        (2.78325, 4.17487),
        (3.42658, 5.13987),
        (0.860717, 1.29108),
        (2.11431, 3.17147),
        (0.266176, 0.399265),
    ],
    [
        (6.17034, 9.25551),
        (3.09249, 4.63874),
        (3.80731, 5.71096),
        (0.956352, 1.43453),
        (2.34924, 3.52386),
        (0.295752, 0.443627),
    ],
];

/// Contracting benchmark, iterates k = 1..=10 per column: (mid, upper).
pub const TABLE2: [[(f64, f64); 6]; 10] = [
    [
        (0.312475, 0.624949),
        (0.655421, 1.31084),
        (0.573896, 1.14779),
        (0.892967, 1.78593),
        (0.755737, 1.51147),
        (0.969249, 1.9385),
    ],
    [
        (0.0976404, 0.195281),
        (0.429577, 0.859154),
        (0.329356, 0.658712),
        (0.797391, 1.59478),
        (0.571138, 1.14228),
        (0.939444, 1.87889),
    ],
    [
        (0.0305101, 0.0610203),
        (0.281554, 0.563107),
        (0.189016, 0.378032),
        (0.712044, 1.42409),
        (0.43163, 0.863261),
        (0.910555, 1.82111),
    ],
    [
        (0.00953365, 0.0190673),
        (0.184536, 0.369072),
        (0.108476, 0.216951),
        (0.635832, 1.27166),
        (0.326199, 0.652398),
        (0.882555, 1.76511),
    ],
    [
        (0.00297902, 0.00595805),
        (0.120949, 0.241898),
        (0.0622536, 0.124507),
        (0.567777, 1.13555),
        (0.246521, 0.493042),
        (0.855415, 1.71083),
    ],
    [
        (0.000930869, 0.00186174),
        (0.0792725, 0.158545),
        (0.0357271, 0.0714542),
        (0.507007, 1.01401),
        (0.186305, 0.37261),
        (0.829111, 1.65822),
    ],
    [
        (0.000290873, 0.000581746),
        (0.0519568, 0.103914),
        (0.0205036, 0.0410072),
        (0.45274, 0.905481),
        (0.140797, 0.281595),
        (0.803615, 1.60723),
    ],
    [
        (0.0000908904, 0.000181781),
        (0.0340536, 0.0681072),
        (0.0117669, 0.0235339),
        (0.404282, 0.808565),
        (0.106406, 0.212812),
        (0.778903, 1.55781),
    ],
    [
        (0.000028401, 0.0000568019),
        (0.0223195, 0.0446389),
        (0.00675299, 0.013506),
        (0.361011, 0.722022),
        (0.0804149, 0.16083),
        (0.754951, 1.5099),
    ],
    [
        (8.87458e-6, 0.0000177492),
        (0.0146286, 0.0292573),
        (0.00387551, 0.00775103),
        (0.322371, 0.644742),
        (0.0607725, 0.121545),
        (0.731735, 1.46347),
    ],
];

/// Oscillating benchmark at α = 0.8: rows t = 1.1..=2.0, columns
/// h = 0.2, 0.02, 0.002; entries (mid, third) of the template-ordered
/// print triple (0, mid, third).
pub const TABLE3_TIMES: [f64; 10] = [1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0];

pub const TABLE3_H: [f64; 3] = [0.2, 0.02, 0.002];

pub const TABLE3: [[(f64, f64); 3]; 10] = [
    [
        (-0.452376, -0.918699),
        (-0.463549, -0.928996),
        (-0.464888, -0.929776),
    ],
    [
        (-0.489654, -0.984721),
        (-0.495423, -0.991934),
        (-0.496057, -0.992115),
    ],
    [
        (-0.489654, -0.984721),
        (-0.495423, -0.991934),
        (-0.496057, -0.992115),
    ],
    [
        (-0.452376, -0.918699),
        (-0.463549, -0.928996),
        (-0.464888, -0.929776),
    ],
    [
        (-0.400112, -0.800241),
        (-0.404397, -0.808832),
        (-0.404508, -0.809017),
    ],
    [
        (-0.307754, -0.628932),
        (-0.317689, -0.637143),
        (-0.318712, -0.637424),
    ],
    [
        (-0.20878, -0.417784),
        (-0.21233, -0.425584),
        (-0.21289, -0.425779),
    ],
    [
        (-0.0927856, -0.176232),
        (-0.0935876, -0.187196),
        (-0.0936907, -0.187381),
    ],
    [
        (0.0304523, 0.0618529),
        (0.0313271, 0.0627734),
        (0.0313953, 0.0627905),
    ],
    [
        (0.146488, 0.301241),
        (0.15359, 0.308805),
        (0.154508, 0.309017),
    ],
];

/// Nonlinear benchmark error table: orders per column.
pub const TABLE4_ALPHAS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// Step denominators per row (h = 1/n).
pub const TABLE4_STEPS: [usize; 4] = [10, 20, 40, 80];

/// Absolute error at t = 1 per (row = step, column = alpha).
pub const TABLE4: [[f64; 5]; 4] = [
    [7.20602e-2, 6.5418e-2, 5.8823e-2, 5.3707e-2, 5.0201e-2],
    [3.9603e-2, 3.3498e-2, 2.9368e-2, 2.6937e-2, 2.5668e-2],
    [2.0653e-2, 1.6611e-2, 1.4420e-2, 1.3384e-2, 1.2962e-2],
    [1.0448e-4, 8.1038e-3, 7.0482e-3, 6.6381e-3, 6.5091e-3],
];

/// The (α = 0.1, h = 1/80) cell breaks the ~2× halving pattern of its
/// column by two orders of magnitude: a suspected misprinted exponent.
/// Golden comparisons exclude it.
pub const TABLE4_SUSPECT_CELL: (usize, usize) = (3, 0);

/// Switching points of D^α(t⁵ - 3t⁴ + 2t³) per order.
pub const TABLE5: [(f64, f64); 6] = [
    (0.1, 0.9701),
    (0.3, 0.9109),
    (0.5, 0.8525),
    (0.7, 0.7949),
    (0.9, 0.7381),
    (1.0, 0.7101),
];
