use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lasagna"));
    c.env_remove("LASAGNA_MAX_DIM");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn lasagna")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn golden(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(p).unwrap()
}

fn ranks(report: &Value) -> Vec<(i64, u64)> {
    report["graded_ranks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["j"].as_i64().unwrap(), e["rank"].as_u64().unwrap()))
        .collect()
}

fn error_kind(out: &Output) -> String {
    let line = String::from_utf8_lossy(&out.stderr);
    let v: Value = serde_json::from_str(line.trim()).expect("stderr is one JSON object");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn unknot_n2_ranks() {
    let r = json(&["s2d2", "--N", "2", "--q-max", "6"]);
    assert_eq!(ranks(&r), vec![(-6, 1), (-4, 1), (-2, 1), (0, 1)]);
    assert_eq!(r["stable"], true);
    assert_eq!(r["sign_convention"], Value::Null);
}

#[test]
fn negative_framing_keeps_one_class() {
    let r = json(&["dp", "--p-sign", "negative", "--n-max", "3", "--j-min", "-6"]);
    assert_eq!(ranks(&r), vec![(-6, 0), (-4, 0), (-2, 0), (0, 1)]);
    let flags: Vec<bool> = r["graded_ranks"].as_array().unwrap().iter().map(|e| e["stable"].as_bool().unwrap()).collect();
    assert_eq!(flags, vec![false, true, true, true]);
    assert_eq!(r["stable"], false);
    assert_eq!(r["sign_convention"], "conjectured");
}

#[test]
fn center_n2_ranks_and_basis() {
    let r = json(&["center", "--n", "2", "--oracle"]);
    assert_eq!(ranks(&r), vec![(0, 1), (2, 3), (4, 2), (6, 0), (8, 0)]);
    assert_eq!(r["oracle_agreement"], true);
    let basis = &r["admissible_basis"];
    assert_eq!(basis[1]["monomials"], serde_json::json!(["X2", "X3", "X4"]));
    assert_eq!(basis[2]["monomials"], serde_json::json!(["X2X4", "X3X4"]));
}

#[test]
fn golden_outputs() {
    let cases: &[(&str, &[&str])] = &[
        ("s2d2_n2.json", &["s2d2", "--N", "2", "--q-max", "6", "--format", "json"]),
        ("s2d2_n2.txt", &["s2d2", "--N", "2", "--q-max", "6"]),
        ("s2d2_n3_oracle.json", &["s2d2", "--N", "3", "--alpha", "-1", "--q-max", "8", "--oracle", "--format", "json"]),
        ("s2d2_unlink.csv", &["s2d2", "--N", "2", "--alpha", "0,0", "--q-max", "6", "--oracle", "--format", "csv"]),
        ("dp_negative.json", &["dp", "--p-sign", "negative", "--n-max", "3", "--j-min", "-6", "--format", "json"]),
        ("dp_positive.csv", &["dp", "--p-sign", "positive", "--n-max", "4", "--j-min", "-8", "--oracle", "--format", "csv"]),
        ("center_n2.json", &["center", "--n", "2", "--oracle", "--format", "json"]),
        ("center_n3.txt", &["center", "--n", "3"]),
    ];
    for (file, args) in cases {
        assert_eq!(stdout(args), golden(file), "{file}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["s2d2", "--N", "3", "--alpha", "0,1", "--q-max", "4", "--oracle", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let args = ["center", "--n", "2", "--format", "csv", "--out", path.to_str().unwrap()];
    assert_eq!(stdout(&args), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout(&["center", "--n", "2", "--format", "csv"]));
}

#[test]
fn reports_match_the_schema() {
    let schema: Value = serde_json::from_str(&golden("../../schema/report.schema.json")).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).unwrap();
    let reports = [
        json(&["s2d2", "--N", "2", "--q-max", "6"]),
        json(&["s2d2", "--N", "2", "--alpha", "0,0", "--q-max", "4", "--oracle"]),
        json(&["dp", "--p-sign", "positive", "--n-max", "2", "--j-min", "-4", "--oracle"]),
        json(&["center", "--n", "2", "--oracle"]),
    ];
    for r in &reports {
        if let Err(errors) = validator.validate(r) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{msgs:?}\n{r}");
        }
    }
}

#[test]
fn unstable_window_is_rejected() {
    let out = run(&["s2d2", "--N", "2", "--q-max", "6", "--r-max", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "unstable_window");
    let ok = run(&["s2d2", "--N", "2", "--q-max", "6", "--r-max", "1", "--oracle", "--allow-unstable", "--format", "json"]);
    assert!(ok.status.code() == Some(0) || ok.status.code() == Some(4));
    let r: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(r["stable"], false);
}

#[test]
fn nonzero_framing_points_to_dp() {
    let out = run(&["s2d2", "--N", "2", "--framing", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "nonzero_framing");
    assert!(String::from_utf8_lossy(&out.stderr).contains("dp"));
}

#[test]
fn resource_caps_exit_3() {
    let out = bin().args(["s2d2", "--N", "2", "--alpha", "0,0", "--q-max", "4"]).env("LASAGNA_MAX_DIM", "1").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "resource_cap");
    let out = run(&["dp", "--p-sign", "positive", "--n-max", "13"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_kind(&out), "resource_cap");
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(run(&["s2d2"]).status.code(), Some(2));
    assert_eq!(run(&["dp", "--p-sign", "sideways"]).status.code(), Some(2));
    let out = run(&["s2d2", "--N", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "invalid_config");
    let out = bin().args(["center", "--n", "1"]).env("LASAGNA_MAX_DIM", "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
