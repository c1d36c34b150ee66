use std::process::{Command, Output};

use serde_json::Value;

fn opsymbol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opsymbol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn small_verify(suite: &str, seed: &str) -> Output {
    opsymbol(&["verify", "--suite", suite, "--seed", seed, "--trials", "20", "--specs", "3", "--pairs", "3"])
}

#[test]
fn ideal_suite_passes_with_exit_zero() {
    let out = opsymbol(&["verify", "--suite", "ideal"]);
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["failed_properties"], 0);
    assert_eq!(report["suites"][0]["suite"], "ideal");
    assert_eq!(report["config"]["trials"], 200);
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let a = small_verify("all", "7");
    let b = small_verify("all", "7");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = small_verify("all", "8");
    assert_ne!(a.stdout, c.stdout, "seed is echoed so reports differ");
}

#[test]
fn thread_count_does_not_change_reports() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_opsymbol"))
            .args(["verify", "--suite", "symbol-laws", "--trials", "30"])
            .env("VERIFY_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").stdout, run("3").stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn bogus_suite_is_a_usage_error() {
    let out = opsymbol(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
}

#[test]
fn invalid_rank_is_rejected() {
    let out = opsymbol(&["verify", "--suite", "ideal", "--rank", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank"));
}

#[test]
fn text_format_and_timing() {
    let out = opsymbol(&["verify", "--suite", "inverse", "--trials", "5", "--format", "text", "--timing"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS inverse_closed_form (5/5)"), "{text}");
    assert!(text.contains("elapsed"));
    let json = opsymbol(&["verify", "--suite", "inverse", "--trials", "5"]);
    assert!(!String::from_utf8(json.stdout).unwrap().contains("duration_ms"));
}

fn compute(input: &str, op: &str, extra: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("input.json");
    std::fs::write(&path, input).unwrap();
    let mut args = vec!["compute", "--input", path.to_str().unwrap(), "--op", op];
    args.extend_from_slice(extra);
    opsymbol(&args)
}

#[test]
fn compute_commutator_of_derivative_and_coordinate() {
    let input = r#"[
        {"m":1,"n":2,"terms":[{"alpha":[1],"coeff":[["1","0"],["0","1"]]}]},
        {"m":1,"n":2,"terms":[{"alpha":[0],"coeff":[["x1","0"],["0","x1"]]}]}
    ]"#;
    let out = compute(input, "bracket", &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["terms"][0]["alpha"], serde_json::json!([0]));
    assert_eq!(v["terms"][0]["coeff"], serde_json::json!([["1", "0"], ["0", "1"]]));
}

#[test]
fn compute_sigma_with_degree() {
    let input = r#"{"m":1,"n":2,"terms":[{"alpha":[1],"coeff":[["0","1"],["0","0"]]}]}"#;
    let out = compute(input, "sigma", &[]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["components"][0]["degree"], 2);
    assert_eq!(v["components"][0]["sl"], serde_json::json!([["0", "xi1"], ["0", "0"]]));
    let below = compute(input, "sigma", &["--degree", "1"]);
    assert_eq!(below.status.code(), Some(1));
}

#[test]
fn compute_symbol_operations() {
    let p = r#"{"m":1,"n":2,"components":[{"degree":0,"sl":[],"scalar":"2"},{"degree":1,"sl":[["0","1"],["0","0"]],"scalar":"0"}]}"#;
    let inv: Value = serde_json::from_slice(&compute(p, "invert", &[]).stdout).unwrap();
    assert_eq!(inv["components"][0]["scalar"], "1/2");
    assert_eq!(inv["components"][1]["sl"][0][1], "-1/4");
    let delta: Value = serde_json::from_slice(&compute(p, "delta", &[]).stdout).unwrap();
    assert_eq!(delta, "2");
    let dec: Value = serde_json::from_slice(&compute(p, "decompose", &[]).stdout).unwrap();
    assert_eq!(dec["pol_part"]["components"][0]["scalar"], "2");
    let prod: Value = serde_json::from_slice(&compute(&format!("[{p},{p}]"), "product", &[]).stdout).unwrap();
    assert_eq!(prod["components"][0]["scalar"], "4");
    assert_eq!(prod["components"][1]["sl"][0][1], "4");
}

#[test]
fn compute_reports_schema_path() {
    let bad = r#"{"m":1,"n":2,"components":[{"degree":1,"sl":[["1","0"],["0","0"]],"scalar":"0"}]}"#;
    let out = compute(bad, "delta", &[]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("components[0].sl"), "{err}");
    let unknown = compute(r#"{"m":1,"n":2,"terms":[],"extra":0}"#, "sigma", &[]);
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("extra"));
}
