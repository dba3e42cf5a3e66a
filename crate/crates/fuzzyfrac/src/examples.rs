//! The four built-in benchmark problems driven by the test-suite and the
//! `ffsolve` harness.
//!
//! 1. Widening linear problem: D^α y = (0,1,1.5) ⊙ Γ(α+1) on \[0,1\],
//!    y(0) = 0, exact solution (0,1,1.5) ⊙ t^α (case i).
//! 2. Contracting linear problem: D^α y = (-1) ⊙ y on \[0,1\],
//!    y(0) = (0,1,2), exact solution (0,1,2) ⊙ E_α(-t^α) (case ii).
//! 3. Oscillating problem on \[1,2\]: D^α y equals a closed-form factor
//!    times (0,½,1); the factor is the base-0 Caputo derivative of
//!    cos(απt) expressed through ₁F₂, the exact solution is
//!    (0,½,1) ⊙ cos(απt), and the factor's sign change is a type-I
//!    switching point (t = 1.40426 at α = 0.8).
//! 4. Nonlinear problem √η̃ ⊙ D^α y ⊕ y² = g(t) ⊙ η̃ on \[0,1\] with
//!    η̃ = (1,2,3) and exact solution √η̃ ⊙ (t⁵-3t⁴+2t³); the isolated
//!    right-hand side divides out √η̃ endpoint-wise after a formal
//!    case-(i) gH-difference (the lower-upper convention used for its
//!    error table).

use std::f64::consts::PI;

use crate::euler::Ffivp;
use crate::frac::{
    self, fractional_euler_memory, gamma, hyp_1f2, mittag_leffler, CrispFunction, FracError,
};
use crate::fuzzy::{apply_monotone, scalar_mul, FuzzyNumber, GhCase};
use crate::fuzzy_frac::DiffPlan;

/// Template (0, 1, 1.5) of the widening problem.
pub fn template1() -> FuzzyNumber {
    FuzzyNumber::triangular(0.0, 1.0, 1.5).unwrap()
}

/// Template (0, 1, 2) of the contracting problem.
pub fn template2() -> FuzzyNumber {
    FuzzyNumber::triangular(0.0, 1.0, 2.0).unwrap()
}

/// Template (0, ½, 1) of the oscillating problem.
pub fn template3() -> FuzzyNumber {
    FuzzyNumber::triangular(0.0, 0.5, 1.0).unwrap()
}

/// η̃ = (1, 2, 3) of the nonlinear problem.
pub fn eta() -> FuzzyNumber {
    FuzzyNumber::triangular(1.0, 2.0, 3.0).unwrap()
}

/// √η̃, lifted endpoint-wise.
pub fn sqrt_eta() -> FuzzyNumber {
    apply_monotone(f64::sqrt, &eta())
}

/// Example 1: widening problem with constant right-hand side.
pub fn example1(alpha: f64) -> Ffivp {
    let g1 = gamma(alpha + 1.0);
    Ffivp::new(
        alpha,
        (0.0, 1.0),
        FuzzyNumber::singleton(0.0),
        move |_, _| scalar_mul(g1, &template1()),
    )
    .with_plan(DiffPlan::single(GhCase::CaseI, 0.0, 1.0))
    .with_exact(move |t: f64| scalar_mul(t.powf(alpha), &template1()))
    .with_lipschitz(0.0)
}

/// Example 2: contracting problem, case-(ii) differentiable.
pub fn example2(alpha: f64) -> Ffivp {
    Ffivp::new(alpha, (0.0, 1.0), template2(), |_, y| scalar_mul(-1.0, y))
        .with_plan(DiffPlan::single(GhCase::CaseII, 0.0, 1.0))
        .with_exact(move |t: f64| {
            scalar_mul(
                mittag_leffler(alpha, -t.powf(alpha)).expect("benchmark range"),
                &template2(),
            )
        })
        .with_lipschitz(1.0)
}

/// Crisp factor of Example 3's right-hand side: the base-0 Caputo
/// derivative of cos(απt) in closed form,
///
///   -π²α² t^{2-α} / ((2-3α+α²) Γ(1-α)) · ₁F₂(1; [3/2-α/2, 2-α/2]; -π²α²t²/4).
pub fn example3_rhs_factor(alpha: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let prefactor = -(PI * PI * alpha * alpha * t.powf(2.0 - alpha))
        / ((2.0 - 3.0 * alpha + alpha * alpha) * gamma(1.0 - alpha));
    let z = -0.25 * PI * PI * alpha * alpha * t * t;
    prefactor * hyp_1f2(1.5 - 0.5 * alpha, 2.0 - 0.5 * alpha, z).expect("entire series")
}

/// Sign change of the Example-3 factor on (lo, hi), refined to 1e-7 by
/// plain bisection. The factor itself is the Caputo derivative, so its
/// root is the switching point.
pub fn example3_switching_point(alpha: f64, lo: f64, hi: f64) -> Result<f64, FracError> {
    let f = |t: f64| example3_rhs_factor(alpha, t);
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = f(lo);
    if f_lo.signum() == f(hi).signum() {
        return Err(FracError::NoSignChange { lo, hi });
    }
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Example 3 as a fuzzy problem on \[1, 2\] with the Caputo operator based
/// at 0 and a declared type-I switching plan.
pub fn example3(alpha: f64) -> Ffivp {
    let xi = example3_switching_point(alpha, 1.0, 2.0).expect("factor changes sign on (1,2)");
    let plan = DiffPlan::from_segments(vec![(1.0, xi, GhCase::CaseI), (xi, 2.0, GhCase::CaseII)])
        .expect("two alternating segments");
    let y0 = scalar_mul((alpha * PI).cos(), &template3());
    Ffivp::new(alpha, (1.0, 2.0), y0, move |t, _| {
        scalar_mul(example3_rhs_factor(alpha, t), &template3())
    })
    .with_plan(plan)
    .with_exact(move |t: f64| scalar_mul((alpha * PI * t).cos(), &template3()))
    .with_lipschitz(0.0)
    .with_caputo_base(0.0)
}

/// Crisp-factor curve of Example 3 from the base point 0: the trajectory
/// c with c(t) = cos(0) + I^α of the factor at t, on nodes t_m = m h, by
/// the product-trapezoid fractional integral. Assembling (0,½,1) ⊙ c(t_m)
/// reproduces the solution table; `h` must divide 2.
pub fn example3_factor_curve(alpha: f64, h: f64) -> Result<(Vec<f64>, Vec<f64>), FracError> {
    let span = 2.0_f64;
    let n = (span / h).round();
    if n < 1.0 || (n * h - span).abs() > 1e-9 {
        return Err(FracError::Domain(format!(
            "h = {h} does not divide the window [0, 2]"
        )));
    }
    let n = n as usize;
    let times: Vec<f64> = (0..=n).map(|m| m as f64 * h).collect();
    let samples: Vec<f64> = times
        .iter()
        .map(|&t| example3_rhs_factor(alpha, t))
        .collect();
    let mut curve = frac::rl_cumulative(&samples, h, alpha);
    for c in &mut curve {
        *c += 1.0; // cos(απ·0) = 1
    }
    Ok((times, curve))
}

/// Map a crisp factor to the source tables' print order (template-0
/// side, mid, template-1 side) — intentionally unsorted when the factor
/// is negative.
pub fn template3_print_triple(factor: f64) -> [f64; 3] {
    [0.0, 0.5 * factor, factor]
}

/// Map a crisp factor to a valid fuzzy number (0,½,1) ⊙ factor.
pub fn template3_value(factor: f64) -> FuzzyNumber {
    scalar_mul(factor, &template3())
}

/// The polynomial p(t) = t⁵ - 3t⁴ + 2t³ underlying Example 4.
pub fn example4_poly(t: f64) -> f64 {
    t.powi(5) - 3.0 * t.powi(4) + 2.0 * t.powi(3)
}

fn example4_poly_deriv(t: f64) -> f64 {
    5.0 * t.powi(4) - 12.0 * t.powi(3) + 6.0 * t.powi(2)
}

/// p as a crisp function with its analytic derivative, for switching-point
/// searches (the sign changes of D^α p give the valid-interval table).
pub fn example4_switch_function() -> CrispFunction {
    CrispFunction::with_derivative(example4_poly, example4_poly_deriv)
}

/// Closed-form Caputo derivative (base 0) of p by the power rule.
pub fn example4_poly_caputo(alpha: f64, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    gamma(6.0) / gamma(6.0 - alpha) * t.powf(5.0 - alpha)
        - 3.0 * gamma(5.0) / gamma(5.0 - alpha) * t.powf(4.0 - alpha)
        + 2.0 * gamma(4.0) / gamma(4.0 - alpha) * t.powf(3.0 - alpha)
}

/// Crisp factor of Example 4's data: G(t) = D^α p(t) + p(t)², so that
/// g(t) = G(t) ⊙ η̃ makes √η̃ ⊙ p the exact solution.
pub fn example4_data_factor(alpha: f64, t: f64) -> f64 {
    example4_poly_caputo(alpha, t) + example4_poly(t).powi(2)
}

/// Example 4 as a fuzzy problem. The right-hand side isolates
/// f = (g ⊖ y²) ⊘ √η̃ per level in the formal case-(i) (lower-with-lower)
/// convention: f⁻ = ((1+r)G - (y⁻)²)/√(1+r), f⁺ = ((3-r)G - (y⁺)²)/√(3-r).
pub fn example4(alpha: f64) -> Ffivp {
    Ffivp::new(
        alpha,
        (0.0, 1.0),
        FuzzyNumber::singleton(0.0),
        move |t, y| {
            let g = example4_data_factor(alpha, t);
            let levels = y.levels().to_vec();
            let mut lower = Vec::with_capacity(levels.len());
            let mut upper = Vec::with_capacity(levels.len());
            for (i, &r) in levels.iter().enumerate() {
                let lo_weight = 1.0 + r;
                let up_weight = 3.0 - r;
                lower.push((lo_weight * g - y.lower()[i] * y.lower()[i]) / lo_weight.sqrt());
                upper.push((up_weight * g - y.upper()[i] * y.upper()[i]) / up_weight.sqrt());
            }
            FuzzyNumber::from_levels(levels, lower, upper).expect("grid is inherited from y")
        },
    )
    .with_plan(DiffPlan::single(GhCase::CaseI, 0.0, 1.0))
    .with_exact(move |t: f64| scalar_mul(example4_poly(t), &sqrt_eta()))
}

/// Error of Example 4 at t = 1 for step 1/n, in the lower-endpoint metric
/// (equivalently the crisp factor error, since the iterates stay
/// √η̃-proportional): the memory form of the scheme applied to the factor
/// equation D^α q = G(t) - q², q(0) = 0 whose solution is p with p(1) = 0.
pub fn example4_error_at_one(alpha: f64, n: usize) -> f64 {
    let h = 1.0 / n as f64;
    let qs = fractional_euler_memory(
        |t, q| example4_data_factor(alpha, t) - q * q,
        0.0,
        0.0,
        h,
        n,
        alpha,
    );
    qs[n].abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler::{solve, solve_memory};
    use crate::fuzzy::hausdorff_distance;

    #[test]
    fn example3_factor_matches_series_definition() {
        // the closed form must agree with the raw Caputo series
        // Σ_{k≥1} (-1)^k (απ)^{2k} t^{2k-α} / Γ(2k+1-α)
        let alpha = 0.8;
        for t in [0.5_f64, 1.0, 1.3, 1.9] {
            let lam: f64 = alpha * PI;
            let mut series = 0.0;
            for k in 1..60i32 {
                let e = 2.0 * f64::from(k) - alpha;
                series += f64::powi(-1.0, k) * lam.powi(2 * k) * t.powf(e)
                    / gamma(2.0 * f64::from(k) + 1.0 - alpha);
            }
            let v = example3_rhs_factor(alpha, t);
            assert!(
                (v - series).abs() < 1e-9 * series.abs().max(1.0),
                "t={t}: {v} vs {series}"
            );
        }
    }

    #[test]
    fn example3_switching_point_location() {
        let xi = example3_switching_point(0.8, 1.0, 2.0).unwrap();
        assert!((xi - 1.40426).abs() < 1e-4, "xi = {xi}");
    }

    #[test]
    fn example3_factor_curve_tracks_cosine() {
        // product-trapezoid reconstruction of cos(απt) from its fractional
        // derivative: fine steps land within a few 1e-4 of the cosine
        let alpha = 0.8;
        let (times, curve) = example3_factor_curve(alpha, 0.002).unwrap();
        for (t, c) in times.iter().zip(&curve) {
            let exact = (alpha * PI * t).cos();
            assert!((c - exact).abs() < 5e-4, "t={t}: {c} vs {exact}");
        }
    }

    #[test]
    fn example3_print_triple_is_template_ordered() {
        let row = template3_print_triple(-0.8);
        assert_eq!(row, [0.0, -0.4, -0.8]);
        // the stored value stays a valid fuzzy number
        assert!(template3_value(-0.8).validate().ok);
    }

    #[test]
    fn example2_solution_decays_toward_mittag_leffler() {
        // the memory iterates converge to (0,1,2) E_α(-t^α); coarse check
        let alpha = 0.9;
        let p = example2(alpha);
        let traj = solve_memory(&p, 0.01).unwrap();
        let exact = p.exact.as_ref().unwrap();
        let last = traj.values.last().unwrap();
        assert!(hausdorff_distance(last, &exact(1.0)) < 5e-3);
    }

    #[test]
    fn example4_rhs_isolates_sqrt_eta_times_caputo() {
        // plugging the exact solution into the isolated right-hand side
        // returns √η̃ ⊙ D^α p in the formal pairing
        let alpha = 0.7;
        let p = example4(alpha);
        let t = 0.4;
        let y = scalar_mul(example4_poly(t), &sqrt_eta());
        let f = (p.rhs)(t, &y);
        let dp = example4_poly_caputo(alpha, t);
        for (i, &r) in f.levels().iter().enumerate() {
            assert!((f.lower()[i] - (1.0 + r).sqrt() * dp).abs() < 1e-12);
            assert!((f.upper()[i] - (3.0 - r).sqrt() * dp).abs() < 1e-12);
        }
    }

    #[test]
    fn example4_iterates_stay_sqrt_eta_proportional() {
        let alpha = 0.9;
        let p = example4(alpha);
        let traj = solve(&p, 0.1).unwrap();
        for y in &traj.values {
            let q = y.lower()[0]; // √(1+0) = 1 scaling
            for (i, &r) in y.levels().iter().enumerate() {
                assert!((y.lower()[i] - (1.0 + r).sqrt() * q).abs() < 1e-10);
                assert!((y.upper()[i] - (3.0 - r).sqrt() * q).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn example4_memory_error_shrinks_linearly() {
        let alpha = 0.9;
        let e10 = example4_error_at_one(alpha, 10);
        let e20 = example4_error_at_one(alpha, 20);
        let e40 = example4_error_at_one(alpha, 40);
        assert!(e10 / e20 > 1.6 && e10 / e20 < 2.3, "{}", e10 / e20);
        assert!(e20 / e40 > 1.6 && e20 / e40 < 2.3, "{}", e20 / e40);
    }

    #[test]
    fn example4_fuzzy_memory_matches_factor_reduction() {
        // the fuzzy memory solve and the crisp factor recursion agree
        let alpha = 0.5;
        let p = example4(alpha);
        let n = 10;
        let traj = solve_memory(&p, 1.0 / n as f64).unwrap();
        let q_err = example4_error_at_one(alpha, n);
        let fuzzy_err = (traj.values.last().unwrap().lower()[0] - 0.0).abs();
        assert!((q_err - fuzzy_err).abs() < 1e-12, "{q_err} vs {fuzzy_err}");
    }

    #[test]
    fn switch_function_matches_closed_caputo() {
        let alpha = 0.6;
        let g = example4_switch_function();
        let quad = crate::frac::QuadratureSpec::default();
        for t in [0.4, 0.8] {
            let via_quad = crate::frac::caputo_derivative(&g, 0.0, t, alpha, &quad).unwrap();
            let closed = example4_poly_caputo(alpha, t);
            assert!(
                (via_quad - closed).abs() < 1e-4,
                "t={t}: {via_quad} vs {closed}"
            );
        }
    }

    #[test]
    fn memory_scheme_is_the_convergent_form_on_example2() {
        // direct iterates drift from the exact solution as h shrinks;
        // memory iterates approach it
        let alpha = 0.6;
        let p = example2(alpha);
        let exact = p.exact.as_ref().unwrap().clone();
        let err = |traj: &crate::euler::FuzzyTrajectory| {
            hausdorff_distance(traj.values.last().unwrap(), &exact(1.0))
        };
        let mem_coarse = err(&solve_memory(&p, 0.1).unwrap());
        let mem_fine = err(&solve_memory(&p, 0.0125).unwrap());
        assert!(
            mem_fine < 0.5 * mem_coarse,
            "memory: {mem_coarse} -> {mem_fine}"
        );
    }
}
