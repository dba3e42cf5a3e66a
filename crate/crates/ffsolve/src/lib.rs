//! Library half of the `ffsolve` harness: experiment runners, check
//! suites and the reference tables, shared by the binary and the
//! integration tests.

pub mod cli;
pub mod output;
pub mod runner;
pub mod suite;
pub mod tables;

use fuzzyfrac::frac::QuadratureSpec;

/// Quadrature configuration honouring the `FFSOLVE_QUAD_NODES` override.
pub fn quad_from_env() -> QuadratureSpec {
    match std::env::var("FFSOLVE_QUAD_NODES") {
        Ok(v) => match v.parse::<usize>() {
            Ok(n) if n >= 2 => QuadratureSpec::with_nodes(n),
            _ => {
                eprintln!("warning: ignoring invalid FFSOLVE_QUAD_NODES={v}");
                QuadratureSpec::default()
            }
        },
        Err(_) => QuadratureSpec::default(),
    }
}
