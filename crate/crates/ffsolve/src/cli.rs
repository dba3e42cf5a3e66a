//! Command-line parsing and dispatch for the `ffsolve` binary.

use std::path::PathBuf;

use crate::runner::{self, RunConfig};
use crate::suite;

pub const USAGE: &str = "usage:
  ffsolve run --example N [--alpha LIST] [--h LIST] [--levels M] [--out DIR] [--seed S]
  ffsolve suite --which properties|golden|convergence|stability [--seed S]
  ffsolve switching --example N [--alpha LIST]

LIST is comma-separated, e.g. --alpha 0.3,0.6,0.9 --h 0.2,0.02.
FFSOLVE_QUAD_NODES overrides the quadrature node density.
Exit code 0 means every executed check passed.";

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{tok}'"))
        })
        .collect()
}

struct Flags<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Flags<'a> {
    fn parse(args: &'a [String]) -> Result<Self, String> {
        let mut pairs = Vec::new();
        let mut it = args.iter();
        while let Some(flag) = it.next() {
            let Some(name) = flag.strip_prefix("--") else {
                return Err(format!("unexpected argument '{flag}'"));
            };
            let value = it.next().ok_or_else(|| format!("--{name} needs a value"))?;
            pairs.push((name, value.as_str()));
        }
        Ok(Flags { pairs })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.pairs.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }

    fn ensure_known(&self, known: &[&str]) -> Result<(), String> {
        for (n, _) in &self.pairs {
            if !known.contains(n) {
                return Err(format!("unknown flag --{n}"));
            }
        }
        Ok(())
    }
}

/// Parse and run a command line; returns whether every executed check
/// passed (runs with no checks count as passing when all files wrote).
pub fn dispatch(args: &[String]) -> Result<bool, String> {
    let Some((cmd, rest)) = args.split_first() else {
        return Err("missing subcommand".into());
    };
    match cmd.as_str() {
        "run" => {
            let flags = Flags::parse(rest)?;
            flags.ensure_known(&["example", "alpha", "h", "levels", "out", "seed"])?;
            let example: u8 = flags
                .get("example")
                .ok_or("run needs --example N")?
                .parse()
                .map_err(|_| "bad --example value".to_string())?;
            let out_dir = PathBuf::from(flags.get("out").unwrap_or("out"));
            let mut cfg = RunConfig::defaults_for(example, out_dir)?;
            if let Some(a) = flags.get("alpha") {
                cfg.alphas = parse_list(a)?;
            }
            if let Some(h) = flags.get("h") {
                cfg.hs = parse_list(h)?;
            }
            if let Some(m) = flags.get("levels") {
                cfg.levels = m.parse().map_err(|_| "bad --levels value".to_string())?;
            }
            if let Some(s) = flags.get("seed") {
                cfg.seed = s.parse().map_err(|_| "bad --seed value".to_string())?;
            }
            let summary = runner::run_example(&cfg)?;
            for f in &summary.files {
                println!("wrote {}", f.display());
            }
            for failure in &summary.failures {
                eprintln!("failed: {failure}");
            }
            Ok(summary.ok())
        }
        "suite" => {
            let flags = Flags::parse(rest)?;
            flags.ensure_known(&["which", "seed"])?;
            let which = flags.get("which").ok_or("suite needs --which NAME")?;
            let seed = match flags.get("seed") {
                Some(s) => s.parse().map_err(|_| "bad --seed value".to_string())?,
                None => 0,
            };
            let quad = crate::quad_from_env();
            let lines = suite::run_named(which, &quad, seed)?;
            let passed = suite::all_pass(&lines);
            println!(
                "{}: {}/{} checks passed",
                which,
                lines.iter().filter(|l| l.pass).count(),
                lines.len()
            );
            Ok(passed)
        }
        "switching" => {
            let flags = Flags::parse(rest)?;
            flags.ensure_known(&["example", "alpha"])?;
            let example: u8 = flags
                .get("example")
                .ok_or("switching needs --example N")?
                .parse()
                .map_err(|_| "bad --example value".to_string())?;
            let alphas = match flags.get("alpha") {
                Some(a) => parse_list(a)?,
                None => match example {
                    3 => vec![0.8],
                    4 => vec![0.1, 0.3, 0.5, 0.7, 0.9, 1.0],
                    _ => vec![],
                },
            };
            println!("alpha,t_switch,type");
            for row in runner::switching_rows(example, &alphas)? {
                println!("{row}");
            }
            Ok(true)
        }
        other => Err(format!("unknown subcommand '{other}'")),
    }
}
