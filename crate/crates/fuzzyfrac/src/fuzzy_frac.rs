//! Fuzzy fractional operators: the F.RL integral and Caputo gH-derivative
//! of fuzzy-valued functions, differentiability-case classification with
//! switching points, and generalized fuzzy Taylor partial sums.
//!
//! Every operator decomposes into its level endpoints: for
//! [f(t)]_r = [f⁻(t;r), f⁺(t;r)] the F.RL integral integrates each
//! endpoint, while the Caputo gH-derivative pairs the two crisp Caputo
//! derivatives in case-(i) order [D f⁻, D f⁺] or case-(ii) order
//! [D f⁺, D f⁻]. A point where the valid pairing flips is a switching
//! point: type I goes (i) → (ii), type II the reverse.

use std::fmt;
use std::sync::Arc;

use crate::frac::{
    self, caputo_derivative, gamma, rl_from_samples, CrispFunction, FracError, QuadratureSpec,
};
use crate::fuzzy::{
    self, add, hukuhara_difference, scalar_mul, valid_within, FuzzyError, FuzzyNumber, GhCase,
};

/// Errors from the fuzzy fractional layer.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyFracError {
    Frac(FracError),
    Fuzzy(FuzzyError),
    /// The requested gH-case does not hold at the evaluation point.
    WrongCase {
        t: f64,
        detail: String,
    },
    /// A Taylor H-difference step failed (width ordering broke down).
    ExpansionInvalid {
        term: usize,
        detail: String,
    },
    Domain(String),
}

impl fmt::Display for FuzzyFracError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzyFracError::Frac(e) => write!(f, "{e}"),
            FuzzyFracError::Fuzzy(e) => write!(f, "{e}"),
            FuzzyFracError::WrongCase { t, detail } => {
                write!(f, "requested gH-case does not hold at t = {t}: {detail}")
            }
            FuzzyFracError::ExpansionInvalid { term, detail } => {
                write!(f, "Taylor expansion invalid at term {term}: {detail}")
            }
            FuzzyFracError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl std::error::Error for FuzzyFracError {}

impl From<FracError> for FuzzyFracError {
    fn from(e: FracError) -> Self {
        FuzzyFracError::Frac(e)
    }
}

impl From<FuzzyError> for FuzzyFracError {
    fn from(e: FuzzyError) -> Self {
        FuzzyFracError::Fuzzy(e)
    }
}

// ---------------------------------------------------------------------------
// Fuzzy-valued functions of a crisp variable
// ---------------------------------------------------------------------------

type FuzzyFn = Arc<dyn Fn(f64) -> FuzzyNumber + Send + Sync>;

/// A fuzzy-valued function of time: either a closed form or a sampled
/// trajectory interpolated linearly per endpoint per level.
#[derive(Clone)]
pub enum FuzzyFunction {
    Closed(FuzzyFn),
    Sampled(Arc<SampledFuzzy>),
}

/// Time grid plus one fuzzy value per node, all on a common level grid.
pub struct SampledFuzzy {
    times: Vec<f64>,
    values: Vec<FuzzyNumber>,
}

impl FuzzyFunction {
    pub fn closed(f: impl Fn(f64) -> FuzzyNumber + Send + Sync + 'static) -> Self {
        FuzzyFunction::Closed(Arc::new(f))
    }

    /// Build a sampled function; times must be strictly increasing.
    pub fn sampled(times: Vec<f64>, values: Vec<FuzzyNumber>) -> Result<Self, FuzzyFracError> {
        if times.len() < 2 || times.len() != values.len() {
            return Err(FuzzyFracError::Domain(
                "need matching grids with ≥ 2 samples".into(),
            ));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FuzzyFracError::Domain(
                "time grid must be strictly increasing".into(),
            ));
        }
        // put all nodes on one level grid so per-level interpolation is aligned
        let reference = values[0].levels().to_vec();
        let aligned: Vec<FuzzyNumber> =
            values.into_iter().map(|v| v.resample(&reference)).collect();
        Ok(FuzzyFunction::Sampled(Arc::new(SampledFuzzy {
            times,
            values: aligned,
        })))
    }

    pub fn eval(&self, t: f64) -> FuzzyNumber {
        match self {
            FuzzyFunction::Closed(f) => f(t),
            FuzzyFunction::Sampled(s) => {
                let times = &s.times;
                if t <= times[0] {
                    return s.values[0].clone();
                }
                if t >= *times.last().unwrap() {
                    return s.values.last().unwrap().clone();
                }
                let idx = times.partition_point(|&v| v < t);
                let (t0, t1) = (times[idx - 1], times[idx]);
                let w = (t - t0) / (t1 - t0);
                let (va, vb) = (&s.values[idx - 1], &s.values[idx]);
                add(&scalar_mul(1.0 - w, va), &scalar_mul(w, vb))
            }
        }
    }

    /// Crisp endpoint function at a fixed membership level.
    pub fn endpoint(&self, r: f64, upper: bool) -> CrispFunction {
        let this = self.clone();
        if upper {
            CrispFunction::new(move |t| this.eval(t).upper_at(r))
        } else {
            CrispFunction::new(move |t| this.eval(t).lower_at(r))
        }
    }
}

impl fmt::Debug for FuzzyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzyFunction::Closed(_) => write!(f, "FuzzyFunction::Closed"),
            FuzzyFunction::Sampled(s) => {
                write!(f, "FuzzyFunction::Sampled({} nodes)", s.times.len())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Differentiability plans
// ---------------------------------------------------------------------------

/// Switching-point direction: type I flips (i) → (ii), type II flips
/// (ii) → (i).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwitchType {
    TypeI,
    TypeII,
}

impl fmt::Display for SwitchType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwitchType::TypeI => write!(f, "type_I"),
            SwitchType::TypeII => write!(f, "type_II"),
        }
    }
}

/// Ordered gH-differentiability segments tiling a problem interval, with
/// the switching points between them.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffPlan {
    segments: Vec<(f64, f64, GhCase)>,
    switches: Vec<(f64, SwitchType)>,
}

impl DiffPlan {
    /// One segment covering the whole interval.
    pub fn single(case: GhCase, t_start: f64, t_end: f64) -> Self {
        DiffPlan {
            segments: vec![(t_start, t_end, case)],
            switches: vec![],
        }
    }

    /// Build from explicit segments; they must tile an interval and
    /// alternate cases. Switch types are derived from the transitions.
    pub fn from_segments(segments: Vec<(f64, f64, GhCase)>) -> Result<Self, FuzzyFracError> {
        if segments.is_empty() {
            return Err(FuzzyFracError::Domain(
                "plan needs at least one segment".into(),
            ));
        }
        let mut switches = Vec::new();
        for w in segments.windows(2) {
            let (_, end0, case0) = w[0];
            let (start1, _, case1) = w[1];
            if (end0 - start1).abs() > 1e-12 {
                return Err(FuzzyFracError::Domain(
                    "segments must tile the interval".into(),
                ));
            }
            if case0 == case1 {
                return Err(FuzzyFracError::Domain(
                    "adjacent segments must have distinct gH-cases".into(),
                ));
            }
            let ty = match case0 {
                GhCase::CaseI => SwitchType::TypeI,
                GhCase::CaseII => SwitchType::TypeII,
            };
            switches.push((start1, ty));
        }
        Ok(DiffPlan { segments, switches })
    }

    pub fn segments(&self) -> &[(f64, f64, GhCase)] {
        &self.segments
    }

    pub fn switches(&self) -> &[(f64, SwitchType)] {
        &self.switches
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.segments[0].0, self.segments.last().unwrap().1)
    }

    /// Case governing a step that starts at node `t`: the update rule
    /// changes at the first node at or after a switching point.
    pub fn case_for(&self, t: f64) -> GhCase {
        let mut case = self.segments[0].2;
        for &(start, _, seg_case) in &self.segments {
            if t >= start - 1e-12 {
                case = seg_case;
            }
        }
        case
    }
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

/// Fuzzy Riemann-Liouville fractional integral: per level, both endpoint
/// functions are fed through the crisp product-trapezoid integral.
pub fn fuzzy_rl_integral(
    f: &FuzzyFunction,
    a: f64,
    t: f64,
    alpha: f64,
    quad: &QuadratureSpec,
) -> Result<FuzzyNumber, FuzzyFracError> {
    if !(0.0 < alpha && alpha <= 1.0) {
        return Err(FuzzyFracError::Frac(FracError::Domain(format!(
            "alpha = {alpha} outside (0, 1]"
        ))));
    }
    if t < a {
        return Err(FuzzyFracError::Frac(FracError::Domain(format!(
            "t = {t} precedes base point a = {a}"
        ))));
    }
    let probe = f.eval(a);
    if t == a {
        let zeros = vec![0.0; probe.level_count()];
        return Ok(FuzzyNumber::from_levels(
            probe.levels().to_vec(),
            zeros.clone(),
            zeros,
        )?);
    }
    let n = quad.cells(t - a);
    let h = (t - a) / n as f64;
    let nodes: Vec<FuzzyNumber> = (0..=n).map(|j| f.eval(a + j as f64 * h)).collect();
    let levels = probe.levels().to_vec();
    let mut lower = Vec::with_capacity(levels.len());
    let mut upper = Vec::with_capacity(levels.len());
    for &r in &levels {
        let lo_samples: Vec<f64> = nodes.iter().map(|v| v.lower_at(r)).collect();
        let up_samples: Vec<f64> = nodes.iter().map(|v| v.upper_at(r)).collect();
        lower.push(rl_from_samples(&lo_samples, h, alpha));
        upper.push(rl_from_samples(&up_samples, h, alpha));
    }
    Ok(FuzzyNumber::from_levels(levels, lower, upper)?)
}

/// Fuzzy Caputo gH-derivative of the requested case at time `t`.
///
/// Case (i) pairs the endpoint derivatives in like order, case (ii)
/// crossed; if the chosen pairing does not form a valid fuzzy number the
/// requested case does not hold at `t`.
pub fn fuzzy_caputo_gh(
    f: &FuzzyFunction,
    a: f64,
    t: f64,
    alpha: f64,
    case: GhCase,
    quad: &QuadratureSpec,
) -> Result<FuzzyNumber, FuzzyFracError> {
    let probe = f.eval(a);
    let levels = probe.levels().to_vec();
    let mut d_lower = Vec::with_capacity(levels.len());
    let mut d_upper = Vec::with_capacity(levels.len());
    for &r in &levels {
        let lo_fn = f.endpoint(r, false);
        let up_fn = f.endpoint(r, true);
        d_lower.push(caputo_derivative(&lo_fn, a, t, alpha, quad)?);
        d_upper.push(caputo_derivative(&up_fn, a, t, alpha, quad)?);
    }
    let (lower, upper) = match case {
        GhCase::CaseI => (d_lower, d_upper),
        GhCase::CaseII => (d_upper, d_lower),
    };
    let candidate = FuzzyNumber::from_levels(levels, lower, upper)?;
    let scale = fuzzy::magnitude(&candidate).max(1.0);
    if !valid_within(&candidate, 1e-6 * scale) {
        return Err(FuzzyFracError::WrongCase {
            t,
            detail: format!("{case} pairing yields crossed or non-nested level sets"),
        });
    }
    Ok(candidate)
}

/// Classify the gH-differentiability of `f` over an interval by the sign
/// of the level-0 width derivative w(t) = D^α f⁺(t;0) − D^α f⁻(t;0):
/// w ≥ 0 selects case (i), w < 0 case (ii). Sign changes are refined by
/// bisection to 1e-6 and recorded as switching points.
///
/// A crisp function (w ≈ 0 throughout) gets a single case-(i) segment by
/// convention.
pub fn classify_differentiability(
    f: &FuzzyFunction,
    a: f64,
    interval: (f64, f64),
    alpha: f64,
    quad: &QuadratureSpec,
) -> Result<DiffPlan, FuzzyFracError> {
    let (t_start, t_end) = interval;
    if !(t_start < t_end) {
        return Err(FuzzyFracError::Domain(format!(
            "bad interval [{t_start}, {t_end}]"
        )));
    }
    if a > t_start {
        return Err(FuzzyFracError::Domain(
            "base point must precede the interval".into(),
        ));
    }
    let lo_fn = f.endpoint(0.0, false);
    let up_fn = f.endpoint(0.0, true);
    let width_deriv = |t: f64| -> Result<f64, FracError> {
        Ok(caputo_derivative(&up_fn, a, t, alpha, quad)?
            - caputo_derivative(&lo_fn, a, t, alpha, quad)?)
    };

    const SCAN: usize = 48;
    let span = t_end - t_start;
    // skip t = a itself where the Caputo operator is degenerate
    let first = if (t_start - a).abs() < 1e-12 {
        t_start + span / SCAN as f64
    } else {
        t_start
    };
    let step = (t_end - first) / (SCAN - 1) as f64;
    let ts: Vec<f64> = (0..SCAN).map(|i| first + i as f64 * step).collect();
    let ws: Vec<f64> = ts
        .iter()
        .map(|&t| width_deriv(t))
        .collect::<Result<_, _>>()?;

    let scale = ws.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
    let eps = 1e-7 * (1.0 + scale);
    if scale < eps {
        // crisp (or width-constant) function: both cases coincide
        return Ok(DiffPlan::single(GhCase::CaseI, t_start, t_end));
    }

    let case_of = |w: f64| {
        if w >= 0.0 {
            GhCase::CaseI
        } else {
            GhCase::CaseII
        }
    };
    let mut segments: Vec<(f64, f64, GhCase)> = Vec::new();
    let mut seg_start = t_start;
    // first significant sample decides the opening case
    let mut current = case_of(*ws.iter().find(|w| w.abs() > eps).unwrap());
    let mut prev_sig: Option<(f64, f64)> = None;
    for (&t, &w) in ts.iter().zip(&ws) {
        if w.abs() <= eps {
            continue;
        }
        if let Some((tp, wp)) = prev_sig {
            if wp.signum() != w.signum() {
                // refine the crossing by bisection
                let (mut lo, mut hi, mut w_lo) = (tp, t, wp);
                while hi - lo > 1e-6 {
                    let mid = 0.5 * (lo + hi);
                    let wm = width_deriv(mid)?;
                    if wm == 0.0 {
                        lo = mid;
                        break;
                    }
                    if wm.signum() == w_lo.signum() {
                        lo = mid;
                        w_lo = wm;
                    } else {
                        hi = mid;
                    }
                }
                let xi = 0.5 * (lo + hi);
                segments.push((seg_start, xi, current));
                seg_start = xi;
                current = case_of(w);
            }
        }
        prev_sig = Some((t, w));
    }
    segments.push((seg_start, t_end, current));
    DiffPlan::from_segments(segments)
}

/// Attach one Taylor (or remainder) term to an accumulator under the
/// given case: case (i) adds, case (ii) resolves acc ⊖ (-1)·term, which
/// per level adds the term with swapped endpoints.
pub fn attach_term(
    acc: &FuzzyNumber,
    term: &FuzzyNumber,
    case: GhCase,
) -> Result<FuzzyNumber, FuzzyError> {
    match case {
        GhCase::CaseI => Ok(add(acc, term)),
        GhCase::CaseII => hukuhara_difference(acc, &scalar_mul(-1.0, term)),
    }
}

/// Generalized fuzzy Taylor partial sum around `a`, evaluated at `t`.
///
/// `derivs[i]` is the i-fold α-order Caputo derivative of f at `a`
/// (index 0 is f(a) itself); `cases[i]` governs how term i attaches.
/// Terms are D^{iα}f(a) ⊙ (t-a)^{iα}/Γ(iα+1).
///
/// Derivatives enter **in their stored case order**: a case-(ii) chain
/// pairs the iterated crisp endpoint derivatives crossed,
/// [D^{iα}f⁺(a), D^{iα}f⁻(a)], and for even-order terms of an
/// alternating-sign solution that pair runs upper-first. Pass it as-is
/// (an improper pair is legitimate input here); the endpoint bookkeeping
/// of ⊕ and ⊖(-1) acts on the stored arrays, and only the accumulated
/// sums are required to be valid fuzzy numbers.
pub fn taylor_partial_sum(
    derivs: &[FuzzyNumber],
    cases: &[GhCase],
    a: f64,
    t: f64,
    alpha: f64,
) -> Result<FuzzyNumber, FuzzyFracError> {
    if derivs.is_empty() {
        return Err(FuzzyFracError::Domain(
            "need at least the value at the base point".into(),
        ));
    }
    if cases.len() != derivs.len() {
        return Err(FuzzyFracError::Domain(
            "cases must pair up with derivatives".into(),
        ));
    }
    if t < a {
        return Err(FuzzyFracError::Domain(format!(
            "t = {t} precedes expansion point {a}"
        )));
    }
    let mut acc = derivs[0].clone();
    for (i, d) in derivs.iter().enumerate().skip(1) {
        let power = i as f64 * alpha;
        let coef = (t - a).powf(power) / gamma(power + 1.0);
        let term = scalar_mul(coef, d);
        acc = attach_term(&acc, &term, cases[i]).map_err(|e| FuzzyFracError::ExpansionInvalid {
            term: i,
            detail: e.to_string(),
        })?;
    }
    Ok(acc)
}

/// n-fold nested fuzzy F.RL integral of the n-th α-derivative: the Taylor
/// remainder magnitude R_n(a, t).
///
/// Each layer integrates the previous one on a fixed uniform grid and is
/// stored as a sampled fuzzy function, so the node count stays flat
/// across layers.
pub fn taylor_remainder(
    f_nth: &FuzzyFunction,
    a: f64,
    t: f64,
    alpha: f64,
    n: usize,
    quad: &QuadratureSpec,
) -> Result<FuzzyNumber, FuzzyFracError> {
    if n == 0 {
        return Err(FuzzyFracError::Domain(
            "remainder order n must be ≥ 1".into(),
        ));
    }
    if t <= a {
        return Err(FuzzyFracError::Domain(format!(
            "t = {t} must exceed base point {a}"
        )));
    }
    let cells = quad.cells(t - a);
    let h = (t - a) / cells as f64;
    let times: Vec<f64> = (0..=cells).map(|j| a + j as f64 * h).collect();
    let probe = f_nth.eval(a);
    let levels = probe.levels().to_vec();

    // per-level endpoint sample matrix of the current layer
    let mut lo: Vec<Vec<f64>> = levels
        .iter()
        .map(|&r| times.iter().map(|&s| f_nth.eval(s).lower_at(r)).collect())
        .collect();
    let mut up: Vec<Vec<f64>> = levels
        .iter()
        .map(|&r| times.iter().map(|&s| f_nth.eval(s).upper_at(r)).collect())
        .collect();

    for _layer in 0..n {
        for i in 0..levels.len() {
            lo[i] = frac::rl_cumulative(&lo[i], h, alpha);
            up[i] = frac::rl_cumulative(&up[i], h, alpha);
        }
    }
    let lower: Vec<f64> = lo.iter().map(|row| *row.last().unwrap()).collect();
    let upper: Vec<f64> = up.iter().map(|row| *row.last().unwrap()).collect();
    Ok(FuzzyNumber::from_levels(levels, lower, upper)?)
}
