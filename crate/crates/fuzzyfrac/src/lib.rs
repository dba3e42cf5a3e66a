//! Fuzzy fractional calculus and the generalized fuzzy Euler method.
//!
//! The crate is organised in four layers:
//!
//! * [`fuzzy`] — fuzzy numbers represented by their r-level intervals,
//!   with the arithmetic (⊕, ⊙, ⊖_gH, interval product), the Hausdorff
//!   metric and validity checking.
//! * [`frac`] — crisp fractional operators: the Riemann–Liouville
//!   integral and Caputo derivative of order 0 < α ≤ 1 on real-valued
//!   functions (product-trapezoid quadrature with exact kernel moments),
//!   plus the special functions they lean on (Γ, E_α, ₁F₂) and
//!   sign-change search for Caputo derivatives.
//! * [`fuzzy_frac`] — the fuzzy lift of the fractional operators:
//!   endpoint-wise F.RL integral, the case (i)/(ii) Caputo gH-derivative,
//!   differentiability classification with switching points, and the
//!   generalized fuzzy Taylor partial sums / nested remainder integrals.
//! * [`euler`] — the generalized fuzzy Euler method for fuzzy fractional
//!   initial value problems in all four differentiability cases, together
//!   with the truncation-error, convergence and stability analyses.
//!
//! [`examples`] defines the four benchmark problems used throughout the
//! test-suite and by the `ffsolve` command-line harness.
//!
//! ## Example
//!
//! Solve D^0.6 y = (-1) ⊙ y with y(0) = (0, 1, 2) under case-(ii)
//! differentiability and compare the final iterate against the
//! Mittag-Leffler reference solution:
//!
//! ```
//! use fuzzyfrac::euler::{solve, solve_memory, Ffivp};
//! use fuzzyfrac::frac::mittag_leffler;
//! use fuzzyfrac::fuzzy::{hausdorff_distance, scalar_mul, FuzzyNumber, GhCase};
//! use fuzzyfrac::fuzzy_frac::DiffPlan;
//!
//! let alpha = 0.6;
//! let y0 = FuzzyNumber::triangular(0.0, 1.0, 2.0).unwrap();
//! let problem = Ffivp::new(alpha, (0.0, 1.0), y0.clone(), |_, y| scalar_mul(-1.0, y))
//!     .with_plan(DiffPlan::single(GhCase::CaseII, 0.0, 1.0));
//!
//! // one-step iterates: y_k = (1 - h^α/Γ(α+1))^k ⊙ y0
//! let traj = solve(&problem, 0.02).unwrap();
//! assert!(traj.values.iter().all(|y| y.validate().ok));
//!
//! // the full-memory form converges to (0,1,2) ⊙ E_α(-t^α)
//! let traj = solve_memory(&problem, 0.005).unwrap();
//! let exact = scalar_mul(mittag_leffler(alpha, -1.0f64).unwrap(), &y0);
//! assert!(hausdorff_distance(traj.values.last().unwrap(), &exact) < 5e-3);
//! ```

pub mod euler;
pub mod examples;
pub mod frac;
pub mod fuzzy;
pub mod fuzzy_frac;

pub use euler::{Ffivp, FuzzyTrajectory, SolveError, SolveReport};
pub use frac::{CrispFunction, FracError, QuadratureSpec};
pub use fuzzy::{FuzzyError, FuzzyNumber, GhCase};
pub use fuzzy_frac::{DiffPlan, FuzzyFunction, SwitchType};
