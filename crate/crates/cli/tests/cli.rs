use std::process::{Command, Output};

use serde_json::Value;

fn kl(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kl"))
        .args(args)
        .env("KL_CACHE_DIR", cache)
        .env_remove("KL_THREADS")
        .output()
        .expect("kl runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn sum_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = kl(&["sum", "--p", "3", "--k", "1", "--n", "2", "--a", "1"], dir.path());
    assert!(out.status.success());
    assert_eq!(json(&out)["value"], "1.0+0.0i");
    assert!(dir.path().join("field_p3_k1.tbl").exists());
}

#[test]
fn roots_and_census() {
    let dir = tempfile::tempdir().unwrap();
    let roots = json(&kl(&["roots", "--type", "G2"], dir.path()));
    assert_eq!(roots["h"], 6);
    let out = kl(&["census", "--type", "E8", "--rep", "qm"], dir.path());
    assert!(out.status.success());
    let c = json(&out);
    assert_eq!(c["predicted_minus_chi"], 8);
    assert_eq!(c["swan_of_dual"], 8);
    let b3 = json(&kl(&["census", "--type", "B3", "--rep", "adjoint"], dir.path()));
    assert_eq!(b3["predicted_minus_chi"], 3);
}

#[test]
fn wild_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = kl(&["wild", "--type", "E8", "--p", "7"], dir.path());
    assert!(out.status.success());
    let w = json(&out);
    assert_eq!(w["swan"], 8);
    assert_eq!(w["pgl2_bound"]["excluded"], true);
    assert_eq!(w["p_divides_weyl_order"], true);
    let bad = kl(&["wild", "--type", "E8", "--p", "5"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(kl(&["bogus"], dir.path()).status.code(), Some(2));
    assert_eq!(kl(&["roots", "--type", "Z9"], dir.path()).status.code(), Some(2));
    assert_eq!(kl(&["sum", "--p", "4", "--n", "2", "--a", "1"], dir.path()).status.code(), Some(2));
    assert_eq!(kl(&["moments", "--p", "2", "--n", "3"], dir.path()).status.code(), Some(2));
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = kl(
        &["table", "--p", "5", "--n", "2", "--format", "csv", "--out", path.to_str().unwrap()],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "a,re,im");
    assert_eq!(lines.len(), 5);
}

#[test]
fn moments_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let g2 = kl(&["moments", "--p", "2", "--k", "13", "--n", "7", "--kmax", "4"], dir.path());
    assert!(g2.status.success());
    let so7 = kl(&["moments", "--p", "2", "--k", "13", "--n", "7", "--kmax", "4", "--target", "SO7"], dir.path());
    assert_eq!(so7.status.code(), Some(1));
    assert_eq!(json(&so7)["moments"][3]["pass"], false);
}

#[test]
fn verify_all_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = kl(&["verify-all"], dir.path());
    let b = kl(&["verify-all", "--threads", "2"], dir.path());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
    let report = json(&a);
    assert_eq!(report["checks"].as_array().unwrap().len(), 9);
}
