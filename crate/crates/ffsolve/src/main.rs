//! `ffsolve` — batch experiment runner for the fuzzy fractional Euler
//! solver. See `ffsolve --help` (or the crate README) for the interface.

use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match ffsolve::cli::dispatch(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            eprintln!();
            eprintln!("{}", ffsolve::cli::USAGE);
            ExitCode::from(2)
        }
    }
}
