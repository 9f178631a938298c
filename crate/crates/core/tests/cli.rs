//! The `fpfun` binary: output, files and exit codes.

use std::process::{Command, Output};

fn fpfun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpfun"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn ext1_of_simple() {
    let o = fpfun(&["compute", "ext1", "S", "S", "--algebra", "k2x2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "dim Ext1(S,S) = 1\n");
}

#[test]
fn defect_of_a_saved_representable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let save = fpfun(&["compute", "defect-seq", "rep(S)", "--save", "F_rep_S", "--out", d]);
    assert_eq!(save.status.code(), Some(0), "{}", String::from_utf8_lossy(&save.stderr));
    let o = fpfun(&["compute", "defect", "F_rep_S", "--load", d]);
    assert_eq!(stdout(&o), "w(F_rep_S) = S (dim 1)\n");
}

#[test]
fn w2_then_evaluate() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = fpfun(&["compute", "w2", "ext(S)", "--save", "ExtS_w2", "--out", d]);
    assert_eq!(o.status.code(), Some(0));
    let o = fpfun(&["compute", "evaluate", "ExtS_w2", "S", "--load", d]);
    assert_eq!(stdout(&o), "dim ExtS_w2(S) = 1\n");
}

#[test]
fn verify_gar_reports_per_probe() {
    let o = fpfun(&["verify", "suite_gar", "--algebra", "k2x2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = v[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    for c in ["0", "S", "L"] {
        assert!(ids.contains(&format!("k2x2@F2/projective/{c}").as_str()), "{ids:?}");
        assert!(ids.contains(&format!("k2x2@F2/injective/{c}").as_str()));
    }
}

#[test]
fn verify_writes_report_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = fpfun(&["verify", "suite_w", "--battery", "representables-only", "--out", d]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("suite_w"));
    let text = std::fs::read_to_string(dir.path().join("suite_w.json")).unwrap();
    let r: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["environment"]["battery"], "representables-only");
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn usage_and_validation_errors_exit_2() {
    assert_eq!(fpfun(&["compute", "hom", "Q", "S"]).status.code(), Some(2));
    assert_eq!(fpfun(&["verify", "suite_nope"]).status.code(), Some(2));
    assert_eq!(fpfun(&["compute", "frobnicate"]).status.code(), Some(2));
    assert_eq!(fpfun(&["compute", "trstar", "rep(op(L))", "S"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    // x acting as the identity breaks x^2 = 0
    std::fs::write(
        &bad,
        r#"{"algebra": "k2x2", "dim": 1, "action": [[[1]], [[1]]]}"#,
    )
    .unwrap();
    let o = fpfun(&["compute", "hom", "bad", "S", "--load", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));
}

#[test]
fn loaded_modules_join_the_battery() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("M.json");
    std::fs::write(
        &m,
        r#"{"name": "M", "algebra": "k2x2", "dim": 2, "action": [[[1,0],[0,1]], [[0,0],[0,0]]]}"#,
    )
    .unwrap();
    let o = fpfun(&["verify", "suite_gar", "--algebra", "k2x2", "--json", "--load", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k2x2@F2/projective/M"));
}
