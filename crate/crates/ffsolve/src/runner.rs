//! Experiment runner behind `ffsolve run` and `ffsolve switching`.
//!
//! Each benchmark gets the emission convention of its source table:
//!
//! * examples 1 and 2 print iterates k = 1..=10 of the one-step scheme
//!   regardless of where 10 steps land in time (the row-label convention
//!   of the solution tables);
//! * example 3 prints the convergent factor reconstruction at the row
//!   times 1.1..=2.0 that fall on the step grid, in the template print
//!   order (0, ½c, c) — intentionally unsorted when c < 0;
//! * example 4 prints the absolute error at t = 1 per (α, h), plus a
//!   switching-point file.

use std::path::PathBuf;
use std::thread;

use fuzzyfrac::euler::{solve, solve_memory, Ffivp, FuzzyTrajectory};
use fuzzyfrac::examples;
use fuzzyfrac::frac::{find_caputo_root, QuadratureSpec};
use fuzzyfrac::fuzzy::FuzzyNumber;

use crate::output::{fmt6, slug, write_csv};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub example: u8,
    pub alphas: Vec<f64>,
    pub hs: Vec<f64>,
    pub levels: usize,
    pub out_dir: PathBuf,
    pub seed: u64,
}

impl RunConfig {
    pub fn defaults_for(example: u8, out_dir: PathBuf) -> Result<Self, String> {
        let (alphas, hs) = match example {
            1 | 2 => (vec![0.3, 0.6, 0.9], vec![0.2, 0.02]),
            3 => (vec![0.8], vec![0.2, 0.02, 0.002]),
            4 => (
                vec![0.1, 0.3, 0.5, 0.7, 0.9],
                vec![0.1, 0.05, 0.025, 0.0125],
            ),
            other => return Err(format!("unknown example {other} (expected 1..=4)")),
        };
        Ok(RunConfig {
            example,
            alphas,
            hs,
            levels: 11,
            out_dir,
            seed: 0,
        })
    }
}

#[derive(Debug, Default)]
pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub failures: Vec<String>,
}

impl RunSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn build_problem(example: u8, alpha: f64, levels: usize) -> Result<Ffivp, String> {
    let mut p = match example {
        1 => examples::example1(alpha),
        2 => examples::example2(alpha),
        3 => examples::example3(alpha),
        4 => examples::example4(alpha),
        other => return Err(format!("unknown example {other}")),
    };
    p.y0 = p.y0.refined(levels);
    Ok(p)
}

/// Rows of a ten-iterate solution table: (k, t_label, triple).
type TableRow = (usize, f64, [f64; 3]);

fn ten_iterate_rows(p: &Ffivp, h: f64) -> Result<(Vec<TableRow>, FuzzyTrajectory), String> {
    let window = Ffivp {
        interval: (p.interval.0, p.interval.0 + 10.0 * h),
        ..p.clone()
    };
    let traj = solve(&window, h).map_err(|e| e.to_string())?;
    let rows = traj
        .values
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, y)| (k, k as f64 / 10.0, [y.lower()[0], y.core().0, y.upper()[0]]))
        .collect();
    Ok((rows, traj))
}

fn factor_table_rows(alpha: f64, h: f64) -> Result<Vec<TableRow>, String> {
    let (times, curve) = examples::example3_factor_curve(alpha, h).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    for (k, t_row) in (1..=10).map(|k| (k, 1.0 + 0.1 * k as f64)) {
        let idx = (t_row / h).round() as usize;
        if idx < times.len() && (times[idx] - t_row).abs() < 1e-9 {
            rows.push((k, t_row, examples::template3_print_triple(curve[idx])));
        }
    }
    Ok(rows)
}

fn plot_rows(traj: &FuzzyTrajectory) -> Vec<String> {
    let mut rows = Vec::new();
    for (t, y) in traj.times.iter().zip(&traj.values) {
        for (i, &r) in y.levels().iter().enumerate() {
            rows.push(format!(
                "{},{},{},{}",
                fmt6(*t),
                fmt6(r),
                fmt6(y.lower()[i]),
                fmt6(y.upper()[i])
            ));
        }
    }
    rows
}

fn example3_plot_trajectory(alpha: f64, h: f64, levels: usize) -> Result<FuzzyTrajectory, String> {
    let (times, curve) = examples::example3_factor_curve(alpha, h).map_err(|e| e.to_string())?;
    let values: Vec<FuzzyNumber> = curve
        .iter()
        .map(|&c| examples::template3_value(c).refined(levels))
        .collect();
    Ok(FuzzyTrajectory {
        h,
        times,
        values,
        step_cases: vec![],
    })
}

type RunOutput = (Vec<(PathBuf, String, String, Vec<String>)>, Vec<String>);

fn run_single(cfg: &RunConfig, alpha: f64, h: f64) -> RunOutput {
    let mut files = Vec::new();
    let mut failures = Vec::new();
    let tag = format!("ex{}_a{}_h{}", cfg.example, slug(alpha), slug(h));
    let echo = format!(
        "example={} alpha={} h={} levels={} seed={}",
        cfg.example, alpha, h, cfg.levels, cfg.seed
    );
    match cfg.example {
        1 | 2 => match build_problem(cfg.example, alpha, cfg.levels)
            .and_then(|p| ten_iterate_rows(&p, h))
        {
            Ok((rows, traj)) => {
                let table: Vec<String> = rows
                    .iter()
                    .map(|(k, t, v)| {
                        format!(
                            "{k},{},{},{},{}",
                            fmt6(*t),
                            fmt6(v[0]),
                            fmt6(v[1]),
                            fmt6(v[2])
                        )
                    })
                    .collect();
                files.push((
                    cfg.out_dir.join(format!("{tag}.csv")),
                    echo.clone(),
                    "k,t_label,lower0,mid,upper0".to_string(),
                    table,
                ));
                files.push((
                    cfg.out_dir.join(format!("plot_{tag}.csv")),
                    echo,
                    "t,r,lower,upper".to_string(),
                    plot_rows(&traj),
                ));
            }
            Err(e) => failures.push(format!("{tag}: {e}")),
        },
        3 => {
            match factor_table_rows(alpha, h) {
                Ok(rows) => {
                    let table: Vec<String> = rows
                        .iter()
                        .map(|(k, t, v)| {
                            format!(
                                "{k},{},{},{},{}",
                                fmt6(*t),
                                fmt6(v[0]),
                                fmt6(v[1]),
                                fmt6(v[2])
                            )
                        })
                        .collect();
                    files.push((
                        cfg.out_dir.join(format!("{tag}.csv")),
                        echo.clone(),
                        "k,t_label,lower0,mid,upper0".to_string(),
                        table,
                    ));
                }
                Err(e) => failures.push(format!("{tag}: {e}")),
            }
            match example3_plot_trajectory(alpha, h, cfg.levels) {
                Ok(traj) => files.push((
                    cfg.out_dir.join(format!("plot_{tag}.csv")),
                    echo,
                    "t,r,lower,upper".to_string(),
                    plot_rows(&traj),
                )),
                Err(e) => failures.push(format!("plot_{tag}: {e}")),
            }
        }
        4 => {
            let n = (1.0 / h).round() as usize;
            if ((n as f64) * h - 1.0).abs() > 1e-9 || n == 0 {
                failures.push(format!("{tag}: h must divide [0,1]"));
            } else {
                let err = examples::example4_error_at_one(alpha, n);
                files.push((
                    cfg.out_dir.join(format!("{tag}_error.csv")),
                    echo.clone(),
                    "alpha,h,error_at_t1".to_string(),
                    vec![format!("{alpha},{h},{:.6e}", err)],
                ));
                match build_problem(4, alpha, cfg.levels)
                    .and_then(|p| solve_memory(&p, h).map_err(|e| e.to_string()))
                {
                    Ok(traj) => files.push((
                        cfg.out_dir.join(format!("plot_{tag}.csv")),
                        echo,
                        "t,r,lower,upper".to_string(),
                        plot_rows(&traj),
                    )),
                    Err(e) => failures.push(format!("plot_{tag}: {e}")),
                }
            }
        }
        _ => failures.push(format!("{tag}: unknown example")),
    }
    (files, failures)
}

/// Switching points for the examples that have them (3 and 4).
pub fn switching_rows(example: u8, alphas: &[f64]) -> Result<Vec<String>, String> {
    let quad = QuadratureSpec::default();
    match example {
        3 => alphas
            .iter()
            .map(|&alpha| {
                examples::example3_switching_point(alpha, 1.0, 2.0)
                    .map(|xi| format!("{alpha},{},type_I", fmt6(xi)))
                    .map_err(|e| format!("alpha={alpha}: {e}"))
            })
            .collect(),
        4 => {
            let g = examples::example4_switch_function();
            alphas
                .iter()
                .map(|&alpha| {
                    find_caputo_root(&g, 0.0, alpha, (0.5, 0.99), &quad)
                        .map(|xi| format!("{alpha},{},type_I", fmt6(xi)))
                        .map_err(|e| format!("alpha={alpha}: {e}"))
                })
                .collect()
        }
        other => Err(format!("example {other} has no switching points")),
    }
}

/// Run the (α, h) grid of a configuration concurrently and write all
/// output files. Returns the summary; failures leave partial outputs on
/// disk and are flagged.
pub fn run_example(cfg: &RunConfig) -> Result<RunSummary, String> {
    if !(cfg.levels >= 2) {
        return Err("levels must be at least 2".into());
    }
    for &alpha in &cfg.alphas {
        if !(0.0 < alpha && alpha <= 1.0) {
            return Err(format!("alpha = {alpha} outside (0, 1]"));
        }
    }
    for &h in &cfg.hs {
        if !(h > 0.0) {
            return Err(format!("h = {h} must be positive"));
        }
    }

    let mut summary = RunSummary::default();
    let grid: Vec<(f64, f64)> = cfg
        .alphas
        .iter()
        .flat_map(|&a| cfg.hs.iter().map(move |&h| (a, h)))
        .collect();

    // solve the grid concurrently, write files sequentially afterwards
    let outputs: Vec<RunOutput> = thread::scope(|scope| {
        let handles: Vec<_> = grid
            .iter()
            .map(|&(alpha, h)| scope.spawn(move || run_single(cfg, alpha, h)))
            .collect();
        handles
            .into_iter()
            .map(|j| j.join().expect("runner thread panicked"))
            .collect()
    });
    for (files, failures) in outputs {
        for (path, echo, columns, rows) in files {
            match write_csv(&path, &echo, &columns, &rows) {
                Ok(()) => summary.files.push(path),
                Err(e) => summary.failures.push(format!("{}: {e}", path.display())),
            }
        }
        summary.failures.extend(failures);
    }

    // switching-point files for the examples that have them
    if matches!(cfg.example, 3 | 4) {
        match switching_rows(cfg.example, &cfg.alphas) {
            Ok(rows) => {
                let path = cfg.out_dir.join(format!("switching_ex{}.csv", cfg.example));
                let echo = format!("example={} alphas={:?}", cfg.example, cfg.alphas);
                match write_csv(&path, &echo, "alpha,t_switch,type", &rows) {
                    Ok(()) => summary.files.push(path),
                    Err(e) => summary.failures.push(format!("switching: {e}")),
                }
            }
            Err(e) => summary.failures.push(format!("switching: {e}")),
        }
    }
    Ok(summary)
}

/// Re-parse an emitted solution-table triple into a valid fuzzy number,
/// unscrambling the template print order when needed.
pub fn parse_triple(lower0: f64, mid: f64, upper0: f64) -> Result<FuzzyNumber, String> {
    let mut xs = [lower0, mid, upper0];
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    FuzzyNumber::triangular(xs[0], xs[1], xs[2]).map_err(|e| e.to_string())
}
