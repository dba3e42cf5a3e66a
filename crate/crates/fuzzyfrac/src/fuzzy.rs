//! Fuzzy numbers as r-level interval stacks, and their arithmetic.
//!
//! A fuzzy number u is stored through its level sets
//! \[u\]_r = \[u⁻(r), u⁺(r)\] on an ordered membership grid
//! r₀ = 0 < r₁ < … < r_{M-1} = 1. Validity means the endpoints are
//! ordered at every level (u⁻ ≤ u⁺) and the level sets are nested
//! (u⁻ non-decreasing, u⁺ non-increasing in r).
//!
//! Triangular numbers (a, b, c) keep their closed form alongside the
//! samples: u⁻(r) = a + (b-a)r and u⁺(r) = c - (c-b)r, so resampling a
//! triangular value onto any grid is exact. Operations that provably
//! preserve linear level functions (⊕, scalar ⊙, ⊖_gH) propagate the
//! closed form; everything else degrades to sampled.

use std::fmt;

/// Default membership grid: 11 uniform levels r = 0, 0.1, …, 1.
pub const DEFAULT_LEVEL_COUNT: usize = 11;

/// Branch selector of the generalized Hukuhara difference.
///
/// Case (i) subtracts like endpoints, case (ii) crossed endpoints; an
/// operation exists only when the chosen branch yields nested level sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhCase {
    CaseI,
    CaseII,
}

impl fmt::Display for GhCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GhCase::CaseI => write!(f, "case_i"),
            GhCase::CaseII => write!(f, "case_ii"),
        }
    }
}

/// Errors from fuzzy-number construction and arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyError {
    /// Triangular ordering a ≤ b ≤ c violated, or a malformed level grid.
    Domain(String),
    /// Neither gH branch yields a valid fuzzy number.
    GhNonexistent { detail: String },
    /// A Hukuhara difference (single-branch) does not exist.
    HNonexistent { detail: String },
}

impl fmt::Display for FuzzyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzyError::Domain(msg) => write!(f, "domain error: {msg}"),
            FuzzyError::GhNonexistent { detail } => {
                write!(f, "gH-difference does not exist: {detail}")
            }
            FuzzyError::HNonexistent { detail } => {
                write!(f, "H-difference does not exist: {detail}")
            }
        }
    }
}

impl std::error::Error for FuzzyError {}

/// Closed-form tag carried next to the samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Form {
    Sampled,
    Triangular { a: f64, b: f64, c: f64 },
}

/// Which invariant a level violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// u⁻(r) > u⁺(r)
    CrossedEndpoints,
    /// u⁻ decreased from the previous level
    LowerNotMonotone,
    /// u⁺ increased from the previous level
    UpperNotMonotone,
}

/// Outcome of `FuzzyNumber::validate`, reporting the first violating level.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub ok: bool,
    pub violation: Option<(usize, f64, ViolationKind)>,
}

/// Numerical slack for validity decisions: rounding on exact operations
/// must not spuriously invalidate a value.
const VALIDITY_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyNumber {
    levels: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    form: Form,
}

fn uniform_grid(count: usize) -> Vec<f64> {
    let m = count.max(2);
    (0..m).map(|i| i as f64 / (m - 1) as f64).collect()
}

impl FuzzyNumber {
    /// Triangular fuzzy number (a, b, c) on the default grid.
    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        Self::triangular_on(a, b, c, DEFAULT_LEVEL_COUNT)
    }

    /// Triangular fuzzy number sampled on a uniform grid of `count` levels.
    pub fn triangular_on(a: f64, b: f64, c: f64, count: usize) -> Result<Self, FuzzyError> {
        if !(a <= b && b <= c) {
            return Err(FuzzyError::Domain(format!(
                "triangular ordering violated: ({a}, {b}, {c})"
            )));
        }
        let levels = uniform_grid(count);
        let lower = levels.iter().map(|&r| a + (b - a) * r).collect();
        let upper = levels.iter().map(|&r| c - (c - b) * r).collect();
        Ok(FuzzyNumber {
            levels,
            lower,
            upper,
            form: Form::Triangular { a, b, c },
        })
    }

    /// Crisp number k as the degenerate triangular (k, k, k).
    pub fn singleton(k: f64) -> Self {
        Self::triangular(k, k, k).expect("singleton ordering trivially holds")
    }

    /// Build from explicit level data. The grid must be strictly increasing
    /// from 0 to 1 with at least two levels; endpoint validity is *not*
    /// enforced here — use `validate`.
    pub fn from_levels(
        levels: Vec<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<Self, FuzzyError> {
        if levels.len() < 2 || levels.len() != lower.len() || levels.len() != upper.len() {
            return Err(FuzzyError::Domain(
                "level arrays mismatched or too short".into(),
            ));
        }
        if levels[0] != 0.0 || *levels.last().unwrap() != 1.0 {
            return Err(FuzzyError::Domain("level grid must run from 0 to 1".into()));
        }
        if levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FuzzyError::Domain(
                "level grid must be strictly increasing".into(),
            ));
        }
        Ok(FuzzyNumber {
            levels,
            lower,
            upper,
            form: Form::Sampled,
        })
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn level_count(&self) -> usize {
        self.levels.len()
    }

    /// Support interval [u⁻(0), u⁺(0)].
    pub fn support(&self) -> (f64, f64) {
        (self.lower[0], self.upper[0])
    }

    /// Core interval [u⁻(1), u⁺(1)].
    pub fn core(&self) -> (f64, f64) {
        (*self.lower.last().unwrap(), *self.upper.last().unwrap())
    }

    /// Interpolated lower endpoint at an arbitrary membership level.
    pub fn lower_at(&self, r: f64) -> f64 {
        match self.form {
            Form::Triangular { a, b, .. } => a + (b - a) * r,
            Form::Sampled => interp(&self.levels, &self.lower, r),
        }
    }

    /// Interpolated upper endpoint at an arbitrary membership level.
    pub fn upper_at(&self, r: f64) -> f64 {
        match self.form {
            Form::Triangular { b, c, .. } => c - (c - b) * r,
            Form::Sampled => interp(&self.levels, &self.upper, r),
        }
    }

    /// Resample onto a new grid. Exact for triangular closed forms,
    /// linear interpolation in r otherwise.
    pub fn resample(&self, levels: &[f64]) -> Self {
        match self.form {
            Form::Triangular { a, b, c } => {
                let lower = levels.iter().map(|&r| a + (b - a) * r).collect();
                let upper = levels.iter().map(|&r| c - (c - b) * r).collect();
                FuzzyNumber {
                    levels: levels.to_vec(),
                    lower,
                    upper,
                    form: self.form,
                }
            }
            Form::Sampled => {
                let lower = levels
                    .iter()
                    .map(|&r| interp(&self.levels, &self.lower, r))
                    .collect();
                let upper = levels
                    .iter()
                    .map(|&r| interp(&self.levels, &self.upper, r))
                    .collect();
                FuzzyNumber {
                    levels: levels.to_vec(),
                    lower,
                    upper,
                    form: Form::Sampled,
                }
            }
        }
    }

    /// Resample onto a uniform grid of `count` levels.
    pub fn refined(&self, count: usize) -> Self {
        self.resample(&uniform_grid(count))
    }

    /// Check both representation invariants; reports the first violation.
    pub fn validate(&self) -> ValidityReport {
        let scale = self
            .lower
            .iter()
            .chain(self.upper.iter())
            .fold(1.0_f64, |m, v| m.max(v.abs()));
        let tol = VALIDITY_EPS * scale;
        for i in 0..self.levels.len() {
            if self.lower[i] > self.upper[i] + tol {
                return ValidityReport {
                    ok: false,
                    violation: Some((i, self.levels[i], ViolationKind::CrossedEndpoints)),
                };
            }
            if i > 0 {
                if self.lower[i] < self.lower[i - 1] - tol {
                    return ValidityReport {
                        ok: false,
                        violation: Some((i, self.levels[i], ViolationKind::LowerNotMonotone)),
                    };
                }
                if self.upper[i] > self.upper[i - 1] + tol {
                    return ValidityReport {
                        ok: false,
                        violation: Some((i, self.levels[i], ViolationKind::UpperNotMonotone)),
                    };
                }
            }
        }
        ValidityReport {
            ok: true,
            violation: None,
        }
    }

    /// Serialize the level sets as CSV rows `r,lower,upper` (6 decimals).
    pub fn csv_levels(&self) -> String {
        let mut out = String::from("r,lower,upper\n");
        for i in 0..self.levels.len() {
            out.push_str(&format!(
                "{:.6},{:.6},{:.6}\n",
                self.levels[i], self.lower[i], self.upper[i]
            ));
        }
        out
    }
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    if x <= xs[0] {
        return ys[0];
    }
    if x >= *xs.last().unwrap() {
        return *ys.last().unwrap();
    }
    let idx = xs.partition_point(|&v| v < x);
    let (x0, x1) = (xs[idx - 1], xs[idx]);
    let (y0, y1) = (ys[idx - 1], ys[idx]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn grids_equal(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-14)
}

/// Align two operands on a common grid (union of their levels).
pub fn align(u: &FuzzyNumber, v: &FuzzyNumber) -> (FuzzyNumber, FuzzyNumber) {
    if grids_equal(&u.levels, &v.levels) {
        return (u.clone(), v.clone());
    }
    let mut merged: Vec<f64> = u.levels.iter().chain(v.levels.iter()).copied().collect();
    merged.sort_by(|a, b| a.partial_cmp(b).unwrap());
    merged.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    (u.resample(&merged), v.resample(&merged))
}

/// Level-wise addition: [u ⊕ v]_r = [u⁻+v⁻, u⁺+v⁺].
pub fn add(u: &FuzzyNumber, v: &FuzzyNumber) -> FuzzyNumber {
    let (u, v) = align(u, v);
    let lower = u.lower.iter().zip(&v.lower).map(|(a, b)| a + b).collect();
    let upper = u.upper.iter().zip(&v.upper).map(|(a, b)| a + b).collect();
    let form = match (u.form, v.form) {
        (
            Form::Triangular {
                a: a1,
                b: b1,
                c: c1,
            },
            Form::Triangular {
                a: a2,
                b: b2,
                c: c2,
            },
        ) => Form::Triangular {
            a: a1 + a2,
            b: b1 + b2,
            c: c1 + c2,
        },
        _ => Form::Sampled,
    };
    FuzzyNumber {
        levels: u.levels,
        lower,
        upper,
        form,
    }
}

/// Scalar multiplication: endpoints scale, swapping for negative k.
pub fn scalar_mul(k: f64, u: &FuzzyNumber) -> FuzzyNumber {
    let (lower, upper): (Vec<f64>, Vec<f64>) = if k >= 0.0 {
        (
            u.lower.iter().map(|x| k * x).collect(),
            u.upper.iter().map(|x| k * x).collect(),
        )
    } else {
        (
            u.upper.iter().map(|x| k * x).collect(),
            u.lower.iter().map(|x| k * x).collect(),
        )
    };
    let form = match u.form {
        Form::Triangular { a, b, c } => {
            if k >= 0.0 {
                Form::Triangular {
                    a: k * a,
                    b: k * b,
                    c: k * c,
                }
            } else {
                Form::Triangular {
                    a: k * c,
                    b: k * b,
                    c: k * a,
                }
            }
        }
        Form::Sampled => Form::Sampled,
    };
    FuzzyNumber {
        levels: u.levels.clone(),
        lower,
        upper,
        form,
    }
}

fn candidate_form(u: &FuzzyNumber, v: &FuzzyNumber, case: GhCase) -> Form {
    match (u.form, v.form) {
        (
            Form::Triangular {
                a: a1,
                b: b1,
                c: c1,
            },
            Form::Triangular {
                a: a2,
                b: b2,
                c: c2,
            },
        ) => match case {
            GhCase::CaseI => Form::Triangular {
                a: a1 - a2,
                b: b1 - b2,
                c: c1 - c2,
            },
            GhCase::CaseII => Form::Triangular {
                a: c1 - c2,
                b: b1 - b2,
                c: a1 - a2,
            },
        },
        _ => Form::Sampled,
    }
}

/// Generalized Hukuhara difference u ⊖_gH v.
///
/// Tries case (i) (like endpoints) first, then case (ii) (crossed
/// endpoints); returns whichever branch produces a valid fuzzy number
/// together with its tag, preferring case (i) on ties.
pub fn gh_difference(
    u: &FuzzyNumber,
    v: &FuzzyNumber,
) -> Result<(FuzzyNumber, GhCase), FuzzyError> {
    let (ua, va) = align(u, v);
    let case_i_lower: Vec<f64> = ua.lower.iter().zip(&va.lower).map(|(a, b)| a - b).collect();
    let case_i_upper: Vec<f64> = ua.upper.iter().zip(&va.upper).map(|(a, b)| a - b).collect();
    let w1 = FuzzyNumber {
        levels: ua.levels.clone(),
        lower: case_i_lower,
        upper: case_i_upper,
        form: candidate_form(u, v, GhCase::CaseI),
    };
    if w1.validate().ok {
        return Ok((w1, GhCase::CaseI));
    }
    let case_ii_lower: Vec<f64> = ua.upper.iter().zip(&va.upper).map(|(a, b)| a - b).collect();
    let case_ii_upper: Vec<f64> = ua.lower.iter().zip(&va.lower).map(|(a, b)| a - b).collect();
    let w2 = FuzzyNumber {
        levels: ua.levels,
        lower: case_ii_lower,
        upper: case_ii_upper,
        form: candidate_form(u, v, GhCase::CaseII),
    };
    if w2.validate().ok {
        return Ok((w2, GhCase::CaseII));
    }
    Err(FuzzyError::GhNonexistent {
        detail: format!(
            "case (i) fails at r = {:?}, case (ii) at r = {:?}",
            w1.validate().violation.map(|(_, r, _)| r),
            w2.validate().violation.map(|(_, r, _)| r)
        ),
    })
}

/// Plain Hukuhara difference u ⊖ v (the case (i) branch only): the w with
/// u = v ⊕ w, when it exists.
pub fn hukuhara_difference(u: &FuzzyNumber, v: &FuzzyNumber) -> Result<FuzzyNumber, FuzzyError> {
    let (ua, va) = align(u, v);
    let lower: Vec<f64> = ua.lower.iter().zip(&va.lower).map(|(a, b)| a - b).collect();
    let upper: Vec<f64> = ua.upper.iter().zip(&va.upper).map(|(a, b)| a - b).collect();
    let w = FuzzyNumber {
        levels: ua.levels,
        lower,
        upper,
        form: candidate_form(u, v, GhCase::CaseI),
    };
    let report = w.validate();
    if report.ok {
        Ok(w)
    } else {
        Err(FuzzyError::HNonexistent {
            detail: format!(
                "width ordering fails at r = {:?}",
                report.violation.map(|(_, r, _)| r)
            ),
        })
    }
}

/// Level-wise interval product: [min, max] of the four endpoint products.
pub fn multiply(u: &FuzzyNumber, v: &FuzzyNumber) -> FuzzyNumber {
    let (u, v) = align(u, v);
    let mut lower = Vec::with_capacity(u.levels.len());
    let mut upper = Vec::with_capacity(u.levels.len());
    for i in 0..u.levels.len() {
        let products = [
            u.lower[i] * v.lower[i],
            u.lower[i] * v.upper[i],
            u.upper[i] * v.lower[i],
            u.upper[i] * v.upper[i],
        ];
        lower.push(products.iter().copied().fold(f64::INFINITY, f64::min));
        upper.push(products.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    }
    FuzzyNumber {
        levels: u.levels,
        lower,
        upper,
        form: Form::Sampled,
    }
}

/// Lift a monotone real map through the level sets: increasing maps act on
/// endpoints in place, decreasing maps swap them. Monotonicity over the
/// support is the caller's contract.
pub fn apply_monotone(f: impl Fn(f64) -> f64, u: &FuzzyNumber) -> FuzzyNumber {
    let (lo, hi) = u.support();
    let increasing = f(lo) <= f(hi);
    let mut lower = Vec::with_capacity(u.levels.len());
    let mut upper = Vec::with_capacity(u.levels.len());
    for i in 0..u.levels.len() {
        let (a, b) = (f(u.lower[i]), f(u.upper[i]));
        if increasing {
            lower.push(a);
            upper.push(b);
        } else {
            lower.push(b);
            upper.push(a);
        }
    }
    FuzzyNumber {
        levels: u.levels.clone(),
        lower,
        upper,
        form: Form::Sampled,
    }
}

/// Validity check with an explicit absolute tolerance, for candidates
/// assembled from quadrature output whose endpoints carry numerical noise.
pub fn valid_within(u: &FuzzyNumber, tol: f64) -> bool {
    for i in 0..u.levels.len() {
        if u.lower[i] > u.upper[i] + tol {
            return false;
        }
        if i > 0 && (u.lower[i] < u.lower[i - 1] - tol || u.upper[i] > u.upper[i - 1] + tol) {
            return false;
        }
    }
    true
}

/// Hausdorff distance: sup over levels of the larger endpoint deviation.
pub fn hausdorff_distance(u: &FuzzyNumber, v: &FuzzyNumber) -> f64 {
    let (u, v) = align(u, v);
    let mut d = 0.0_f64;
    for i in 0..u.levels.len() {
        d = d.max((u.lower[i] - v.lower[i]).abs());
        d = d.max((u.upper[i] - v.upper[i]).abs());
    }
    d
}

/// Hausdorff distance to the crisp zero singleton.
pub fn magnitude(u: &FuzzyNumber) -> f64 {
    u.lower
        .iter()
        .chain(u.upper.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()))
}
