use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirspace")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn num(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// ζ(2) summed directly, independent of the library.
fn zeta2_by_sum() -> f64 {
    let n = 1_000_000u64;
    let head: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum();
    head + 1.0 / n as f64 - 0.5 / (n as f64 * n as f64)
}

#[test]
fn rho_solves_its_equation() {
    let v = json(&["rho", "--tol", "1e-10"]);
    let rho = num(&v, "rho");
    assert!((0.86..0.87).contains(&rho));
    assert!(num(&v, "residual") <= 1e-10);
}

#[test]
fn identity_reports_closed_form() {
    let v = json(&["identity", "--sigma", "2.0", "--N", "10000"]);
    let expected = 1.0 / (2.0 - zeta2_by_sum());
    assert!((num(&v, "rhs") - expected).abs() <= 1e-10 * expected);
    assert!(num(&v, "lhs") < num(&v, "rhs"));
}

#[test]
fn zeta_matches_direct_sum() {
    let v = json(&["zeta", "--s", "2,0"]);
    assert!((num(&v, "re") - zeta2_by_sum()).abs() <= 1e-12);
    assert!(num(&v, "im").abs() <= 1e-15);
}

#[test]
fn plancherel_csv_layout() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "2 1 0\n3 0.5 0\n");
    let out =
        run(&["plancherel", "--series", s(&f), "--measure", "moment:point=0,alpha=-1,scale=1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("T,c,value,target,abs_error"));
    // three T values for each of three c values, plus the appended c = 0 column
    assert_eq!(lines.count(), 12);
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = run(&["interp-build", "--count", "5", "--seed", "7", "--output", s(p)]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn floats_carry_seventeen_digits() {
    let out = run(&["rho"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"rho\":8.6432361949"), "{text}");
    let mantissa = text.split("\"rho\":").nth(1).unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.len(), 18);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["rho", "--tol"]).status.code(), Some(1));
    assert_eq!(run(&["identity"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn domain_errors_exit_two() {
    assert_eq!(run(&["zeta", "--s", "1,0"]).status.code(), Some(2));
    assert_eq!(run(&["identity", "--sigma", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["norm", "--series", "/nonexistent/series.txt"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "2 1\n");
    assert_eq!(run(&["norm", "--series", s(&bad)]).status.code(), Some(2));
}

#[test]
fn convergence_failure_exits_three() {
    assert_eq!(run(&["rho", "--tol", "1e-30"]).status.code(), Some(3));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "run.cfg", "# defaults\ntol = 1e-6\n");
    let from_file = json(&["--config", s(&cfg), "rho"]);
    assert!((num(&from_file, "tol") - 1e-6).abs() <= 1e-21);
    let flag_wins = json(&["rho", "--config", s(&cfg), "--tol", "1e-9"]);
    assert!((num(&flag_wins, "tol") - 1e-9).abs() <= 1e-24);
    let flags = write(&dir, "flags.cfg", "trapezoid = false\nweights = pick\n");
    let f = write(&dir, "f.txt", "2 1 0\n");
    let v = json(&["norm", "--series", s(&f), "--config", s(&flags)]);
    assert_eq!(v["weights"], "pick");
}

#[test]
fn every_subcommand_runs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "2 1 0\n3 0.5 -0.5\n");
    let phi = write(&dir, "phi.txt", "1 1 0\n2 0.5 0\n");
    let nodes = write(&dir, "nodes.txt", "1.2 0 0.3 0\n1.5 1 0.1 0\n");
    let plain = write(&dir, "plain.txt", "1.2 0\n1.6 3\n");
    let cases: Vec<Vec<&str>> = vec![
        vec!["zeta", "--s", "3,1"],
        vec!["rho"],
        vec!["weights", "--weights", "log-power:1", "--to", "8", "--slow-decay-eps", "0.5"],
        vec!["norm", "--series", s(&f), "--other", s(&f)],
        vec!["kernel", "--s", "2,0", "--u", "2,1"],
        vec!["kernel", "--nodes", s(&plain)],
        vec!["factorizations", "--to", "12"],
        vec!["identity", "--sigma", "3"],
        vec!["plancherel", "--series", s(&f), "--measure", "moment:point=1", "--T", "10,100", "--c", "0.1,0.01"],
        vec!["pick-check", "--nodes", s(&nodes)],
        vec!["gram", "--nodes", s(&plain)],
        vec!["interp-build", "--count", "3"],
        vec!["realize", "--s", "1.5,0", "--s", "2,3"],
        vec!["mult-norm", "--series", s(&phi), "--trunc", "32"],
        vec!["sup-norm", "--series", s(&phi)],
        vec!["carleson", "--series", s(&phi), "--alpha", "1", "--tests", s(&f), "--T", "100"],
        vec!["abscissae", "--family", "shifted-zeta", "--eps", "0.2", "--horizon", "4096"],
        vec!["translations", "--series", s(&f), "--window", "0,20", "--step", "0.1"],
        vec!["smooth-project", "--series", s(&f), "--primes", "1", "--sigma", "1"],
    ];
    for args in &cases {
        for format in ["json", "csv"] {
            let mut full = args.clone();
            full.extend(["--format", format]);
            let out = run(&full);
            assert!(out.status.success(), "{full:?}: {}", String::from_utf8_lossy(&out.stderr));
            assert!(!out.stdout.is_empty());
        }
    }
}

#[test]
fn interp_build_writes_a_readable_node_file() {
    let dir = TempDir::new().unwrap();
    let nodes = dir.path().join("nodes.txt");
    json(&["interp-build", "--count", "4", "--nodes-out", s(&nodes)]);
    let v = json(&["gram", "--nodes", s(&nodes), "--weights", "pick"]);
    assert_eq!(v["psd"], true);
    assert!(num(&v, "hs_offdiag") < 1.0);
}
