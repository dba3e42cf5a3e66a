//! End-to-end checks of the `ffsolve` binary: file emission, print-order
//! conventions, determinism, exit codes.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ffsolve"))
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ffsolve_{tag}_{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn run_example1_writes_deterministic_tables() {
    let dir = temp_dir("ex1");
    let out = dir.to_str().unwrap();
    let run = |dest: &str| {
        let status = bin()
            .args([
                "run",
                "--example",
                "1",
                "--alpha",
                "0.6",
                "--h",
                "0.2",
                "--out",
                dest,
            ])
            .status()
            .unwrap();
        assert!(status.success());
    };
    run(out);
    let table = dir.join("ex1_a0p6_h0p2.csv");
    let body = fs::read_to_string(&table).unwrap();
    let mut lines = body.lines();
    assert!(lines.next().unwrap().starts_with("# example=1"));
    assert_eq!(lines.next().unwrap(), "k,t_label,lower0,mid,upper0");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    // iterate 1 at h = 0.2: 0.2^0.6 ⊙ (0,1,1.5)
    assert_eq!(first[2], "0.000000");
    assert_eq!(first[3], "0.380731");
    assert_eq!(first[4], "0.571096");
    let last = body.lines().last().unwrap();
    assert!(
        last.starts_with("10,"),
        "ten iterate rows expected, got {last}"
    );

    // byte-identical on a second run
    let dir2 = temp_dir("ex1b");
    run(dir2.to_str().unwrap());
    let again = fs::read_to_string(dir2.join("ex1_a0p6_h0p2.csv")).unwrap();
    assert_eq!(body, again);

    // plot data present with the long-format header
    let plot = fs::read_to_string(dir.join("plot_ex1_a0p6_h0p2.csv")).unwrap();
    assert_eq!(plot.lines().nth(1).unwrap(), "t,r,lower,upper");

    let _ = fs::remove_dir_all(&dir);
    let _ = fs::remove_dir_all(&dir2);
}

#[test]
fn run_example3_emits_template_order_and_switching() {
    let dir = temp_dir("ex3");
    let status = bin()
        .args([
            "run",
            "--example",
            "3",
            "--alpha",
            "0.8",
            "--h",
            "0.002",
            "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());

    let body = fs::read_to_string(dir.join("ex3_a0p8_h0p002.csv")).unwrap();
    let first_row: Vec<&str> = body.lines().nth(2).unwrap().split(',').collect();
    // template print order (0, c/2, c) with c < 0: columns intentionally unsorted
    assert_eq!(first_row[1], "1.100000");
    assert_eq!(first_row[2], "0.000000");
    let mid: f64 = first_row[3].parse().unwrap();
    let third: f64 = first_row[4].parse().unwrap();
    assert!((mid - -0.464888).abs() < 5e-4, "mid {mid}");
    assert!((third - -0.929776).abs() < 5e-4, "third {third}");
    // unscrambles into a valid fuzzy number
    let parsed = ffsolve::runner::parse_triple(first_row[2].parse().unwrap(), mid, third).unwrap();
    assert!(parsed.validate().ok);

    let switching = fs::read_to_string(dir.join("switching_ex3.csv")).unwrap();
    let row = switching.lines().nth(2).unwrap();
    assert!(row.starts_with("0.8,1.4042"), "switching row {row}");
    assert!(row.ends_with("type_I"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn run_example4_emits_error_and_switching_tables() {
    let dir = temp_dir("ex4");
    let status = bin()
        .args([
            "run",
            "--example",
            "4",
            "--alpha",
            "0.9",
            "--h",
            "0.1",
            "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(status.success());
    let body = fs::read_to_string(dir.join("ex4_a0p9_h0p1_error.csv")).unwrap();
    let row: Vec<&str> = body.lines().nth(2).unwrap().split(',').collect();
    let err: f64 = row[2].parse().unwrap();
    assert!((err - 5.0201e-2).abs() / 5.0201e-2 < 0.15, "error {err}");
    let switching = fs::read_to_string(dir.join("switching_ex4.csv")).unwrap();
    assert!(switching.lines().nth(2).unwrap().starts_with("0.9,0.738"));
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn oversized_step_flags_failure_with_nonzero_exit() {
    let dir = temp_dir("bad");
    let output = bin()
        .args([
            "run",
            "--example",
            "2",
            "--alpha",
            "0.3",
            "--h",
            "1.0",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1), "expected failure exit");
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("invalid fuzzy number"), "stderr: {stderr}");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors_exit_with_code_two() {
    let output = bin().args(["run", "--bogus", "1"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let output = bin().args(["frobnicate"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let output = bin()
        .args(["suite", "--which", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn suite_subcommand_passes_for_stability() {
    let output = bin()
        .args(["suite", "--which", "stability"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("PASS"));
    assert!(stdout.lines().last().unwrap().contains("checks passed"));
}

#[test]
fn switching_subcommand_prints_roots() {
    let output = bin()
        .args(["switching", "--example", "4"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("0.1,0.970"), "stdout: {stdout}");
    assert!(stdout.contains("1,0.710"), "stdout: {stdout}");
}

#[test]
fn quad_nodes_env_override_is_accepted() {
    let output = bin()
        .env("FFSOLVE_QUAD_NODES", "64")
        .args(["switching", "--example", "4", "--alpha", "0.9"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("0.9,0.73"), "stdout: {stdout}");
}
