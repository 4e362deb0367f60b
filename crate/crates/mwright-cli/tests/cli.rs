//! End-to-end tests of the `mwright` binary: exit codes, output schemas,
//! and byte-level determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mwright"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("mwright-cli-test-{}-{name}", std::process::id()));
    p
}

fn write_sample_csv(
    name: &str,
    variant: &str,
    alpha: &str,
    rho: &str,
    mu: &str,
    n: &str,
) -> PathBuf {
    let path = tmp_path(name);
    let out = run(&[
        "sample",
        "--variant",
        variant,
        "--alpha",
        alpha,
        "--rho",
        rho,
        "--mu",
        mu,
        "-n",
        n,
        "--seed",
        "19",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    path
}

#[test]
fn density_half_normal_at_origin() {
    let out = stdout_of(&[
        "density",
        "--variant",
        "one-sided",
        "--alpha",
        "0.5",
        "--rho",
        "1",
        "--mu",
        "0",
        "--from",
        "0",
        "--to",
        "4",
        "--points",
        "200",
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "x,pdf");
    let first = lines.next().unwrap();
    let y: f64 = first.split(',').nth(1).unwrap().parse().unwrap();
    assert!((y - 0.564_189_6).abs() < 1e-6, "pdf(0) = {y}");
    assert_eq!(out.lines().count(), 201);
}

#[test]
fn are_curve_crosses_unity_at_cutoff() {
    let out = stdout_of(&[
        "density", "--curve", "are", "--from", "0.05", "--to", "0.95", "--points", "1801",
    ]);
    let rows: Vec<(f64, f64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    let crossing = rows
        .windows(2)
        .find(|w| (w[0].1 - 1.0) * (w[1].1 - 1.0) <= 0.0)
        .expect("ARE curve must cross 1.0");
    let alpha_at_crossing = crossing[0].0;
    assert!(
        (alpha_at_crossing - 0.39106).abs() < 1e-3,
        "crossing at {alpha_at_crossing}"
    );
}

#[test]
fn sample_deterministic_and_fit_recovers() {
    let path = write_sample_csv("ages", "one-sided", "0.6", "8.77", "25.2", "5000");
    let again = tmp_path("ages2");
    let out = run(&[
        "sample",
        "--variant",
        "one-sided",
        "--alpha",
        "0.6",
        "--rho",
        "8.77",
        "--mu",
        "25.2",
        "-n",
        "5000",
        "--seed",
        "19",
        "--output",
        again.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Same flags + same seed => byte-identical files.
    assert_eq!(fs::read(&path).unwrap(), fs::read(&again).unwrap());

    let json = stdout_of(&[
        "fit",
        "--variant",
        "one-sided",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "value",
        "--mc-m",
        "20000",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in [
        "params",
        "ci",
        "corr_alpha_rho",
        "location_estimator",
        "diagnostics",
        "seed",
    ] {
        assert!(v.get(key).is_some(), "missing key {key}");
    }
    for key in ["alpha", "rho", "mu", "variant"] {
        assert!(v["params"].get(key).is_some(), "missing params.{key}");
    }
    for key in ["alpha", "rho", "mu"] {
        assert!(v["ci"][key].is_array(), "ci.{key} not an interval");
    }
    let alpha = v["params"]["alpha"].as_f64().unwrap();
    let mu = v["params"]["mu"].as_f64().unwrap();
    assert!((alpha - 0.6).abs() < 0.05, "alpha {alpha}");
    assert!((mu - 25.2).abs() < 0.01, "mu {mu}");
    assert_eq!(v["location_estimator"], "min");

    fs::remove_file(path).ok();
    fs::remove_file(again).ok();
}

#[test]
fn fit_output_deterministic_bytes() {
    let path = write_sample_csv("det", "symmetric", "0.5", "1", "0", "2000");
    let args = [
        "fit",
        "--variant",
        "symmetric",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "value",
        "--seed",
        "5",
        "--format",
        "csv",
    ];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    assert_eq!(a, b);
    assert!(a.starts_with("key,value\n"));
    fs::remove_file(path).ok();
}

#[test]
fn fit_too_few_rows_exits_3() {
    let path = tmp_path("short.csv");
    fs::write(&path, "value\n1\n2\n3\n4\n5\n").unwrap();
    let out = run(&[
        "fit",
        "--variant",
        "one-sided",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "value",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("estimation error"), "stderr: {err}");
    fs::remove_file(path).ok();
}

#[test]
fn missing_file_exits_2() {
    let out = run(&[
        "fit",
        "--variant",
        "one-sided",
        "--input",
        "/nonexistent/nope.csv",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_cell_named_in_error() {
    let path = tmp_path("bad.csv");
    fs::write(&path, "value\n1.0\n2.0\noops\n4.0\n").unwrap();
    let out = run(&[
        "fit",
        "--variant",
        "one-sided",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "value",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("row 4") && err.contains("oops"),
        "stderr: {err}"
    );
    fs::remove_file(path).ok();
}

#[test]
fn header_autodetect_and_index_column() {
    let path = tmp_path("noheader.csv");
    let body: String = (0..50).map(|i| format!("{}.5\n", i + 1)).collect();
    fs::write(&path, body).unwrap();
    let out = run(&[
        "fit",
        "--variant",
        "one-sided",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "0",
        "--mc-m",
        "5000",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    fs::remove_file(path).ok();
}

#[test]
fn gof_reports_mean_p() {
    let path = write_sample_csv("gof", "one-sided", "0.6", "2", "0", "1000");
    let json = stdout_of(&[
        "gof",
        "--variant",
        "one-sided",
        "--input",
        path.to_str().unwrap(),
        "--column",
        "value",
        "--sims",
        "40",
        "--seed",
        "2",
        "--mc-m",
        "5000",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let p = v["mean_p"].as_f64().unwrap();
    assert!(p > 0.1, "well-specified fit should not be rejected: {p}");
    assert_eq!(v["sims"], 40);
    fs::remove_file(path).ok();
}

#[test]
fn simulate_csv_shape_and_determinism() {
    let args = [
        "simulate",
        "coverage",
        "--combo",
        "0.6,8.77,0,one-sided-mu-zero",
        "--sizes",
        "200",
        "--replicates",
        "40",
        "--seed",
        "7",
    ];
    let a = stdout_of(&args);
    let b = stdout_of(&args);
    assert_eq!(a, b);
    let lines: Vec<&str> = a.trim_end().lines().collect();
    assert_eq!(lines[0], "case,alpha,rho,mu,n,parameter,metric,value");
    assert_eq!(lines.len(), 3, "alpha and rho coverage rows: {a}");
    for line in &lines[1..] {
        let cov: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((0.0..=1.0).contains(&cov));
    }
}

#[test]
fn simulate_preset_bias_json() {
    let out = stdout_of(&[
        "simulate",
        "bias",
        "--preset",
        "table1",
        "--sizes",
        "100",
        "--replicates",
        "20",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let cells = v["cells"].as_array().unwrap();
    // 4 combos x 1 size x 2 parameters.
    assert_eq!(cells.len(), 8);
    assert_eq!(v["seed"], 3);
}

#[test]
fn simulate_without_combos_exits_2() {
    let out = run(&["simulate", "bias", "--sizes", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_shifted_preset_emits_location_rows() {
    let out = stdout_of(&[
        "simulate",
        "coverage",
        "--preset",
        "table4",
        "--sizes",
        "100",
        "--replicates",
        "5",
        "--seed",
        "9",
        "--mc-m",
        "2000",
    ]);
    let mu_rows = out.lines().filter(|l| l.contains(",mu,coverage,")).count();
    assert_eq!(mu_rows, 4, "one mu coverage row per combo: {out}");
}
