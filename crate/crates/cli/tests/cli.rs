use std::path::PathBuf;
use std::process::{Command, Output};

fn vdw(args: &[&str]) -> Output {
    vdw_env(args, &[])
}

fn vdw_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vdw"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("vdw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Value column of the row whose first cell is `name`.
fn lookup(csv: &str, name: &str) -> f64 {
    csv.lines()
        .find(|l| l.starts_with(&format!("{name},")))
        .and_then(|l| l.split(',').nth(1))
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| panic!("{name} missing from\n{csv}"))
}

#[test]
fn coefficients_with_defaults() {
    let o = vdw(&["coefficients"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.starts_with("# "));
    assert!((lookup(&csv, "a_VW") - 6.499).abs() < 1e-3);
    assert!((lookup(&csv, "a_VW_time_domain") - 6.499).abs() < 1e-3);
    assert!((lookup(&csv, "a_CP") - 37.07).abs() < 1e-2);
    assert!((lookup(&csv, "R_star") - 5.70).abs() < 1e-2);
    assert!((lookup(&csv, "alpha_hy") - 4.5).abs() < 1e-9);
}

#[test]
fn empty_crossover_range_is_header_only() {
    let o = vdw(&["crossover", "--r-min", "2", "--r-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let body: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body, vec!["R,h,h_R6,h_R7"]);
}

#[test]
fn molecular_regime_without_table_exits_2() {
    let o = vdw(&["regime", "--alpha", "0.1", "--gamma", "1", "--r", "1.4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E_2R"));
}

#[test]
fn molecular_regime_with_table() {
    let cfg = scratch("e2r.toml");
    std::fs::write(&cfg, "[regime]\ne2r_table = [[1.0, -1.0], [2.0, -1.2]]\na0 = 0.25\n").unwrap();
    let o = vdw(&["--config", cfg.to_str().unwrap(), "regime", "--alpha", "0.1", "--gamma", "1", "--r", "1.5"]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o).lines().last().unwrap().to_string();
    let energy: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
    assert!((energy - 0.01 * (-1.1 - 0.5)).abs() < 1e-14);
}

#[test]
fn van_der_waals_regime_is_attractive() {
    let o = vdw(&["regime", "--alpha", "0.1", "--gamma", "1.5", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.contains("1<gamma<2"));
    let energy: f64 = csv.lines().last().unwrap().split(',').nth(4).unwrap().parse().unwrap();
    assert!(energy < 0.0);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(vdw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(vdw(&["coefficients", "--bogus"]).status.code(), Some(2));
    assert_eq!(vdw(&["kernels"]).status.code(), Some(2));
    assert_eq!(vdw(&["polarizability", "--u-grid", "lin:0:1"]).status.code(), Some(2));
    assert_eq!(vdw(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_errors_exit_2() {
    let cfg = scratch("bad.toml");
    std::fs::write(&cfg, "[basis]\nsize = 0\n").unwrap();
    assert_eq!(vdw(&["--config", cfg.to_str().unwrap(), "spectrum"]).status.code(), Some(2));
    assert_eq!(vdw(&["--config", "/nonexistent/vdw.toml", "spectrum"]).status.code(), Some(2));
    assert_eq!(vdw(&["--profile", "nope", "a0"]).status.code(), Some(2));
    assert_eq!(vdw_env(&["spectrum"], &[("VDW_THREADS", "zero")]).status.code(), Some(2));
}

#[test]
fn starved_quadrature_exits_3() {
    let cfg = scratch("starved.toml");
    std::fs::write(&cfg, "[quadrature]\nnode_budget = 30\n").unwrap();
    let o = vdw(&["--config", cfg.to_str().unwrap(), "crossover", "--points", "3"]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn csv_output_round_trips() {
    let first = scratch("crossover.csv");
    let second = scratch("crossover-again.csv");
    let o = vdw(&["crossover", "--points", "7", "-o", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = vdw(&["reformat", first.to_str().unwrap(), "-o", second.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());
}

#[test]
fn json_output_is_versioned() {
    let o = vdw(&["--format", "json", "polarizability", "--u-grid", "0,1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "polarizability");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert!((v["rows"][0][1].as_f64().unwrap() - 2.25).abs() < 1e-9);
}

#[test]
fn monte_carlo_output_is_reproducible() {
    let args = ["--seed", "17", "mc-action", "--alpha", "0.4", "--tau", "0.5", "--paths", "16"];
    let one = vdw_env(&args, &[("VDW_THREADS", "1")]);
    let three = vdw_env(&args, &[("VDW_THREADS", "3")]);
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, three.stdout);
    let other = vdw(&["--seed", "18", "mc-action", "--alpha", "0.4", "--tau", "0.5", "--paths", "16"]);
    assert_ne!(one.stdout, other.stdout);
}

#[test]
fn a0_reports_both_exponents() {
    let o = vdw(&["a0"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    assert!(csv.contains("resolvent") && csv.contains("halved"));
    let o = vdw(&["--profile", "gaussian", "a0"]);
    assert!(stdout(&o).contains("warning"));
}
