use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn hqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hqc")).args(args).env_remove("HQC_DEGREE_CAP").output().expect("run hqc")
}

fn fixtures(dir: &Path) {
    let out = hqc(&["fixtures", "all", "--dir", dir.to_str().unwrap()]);
    assert!(out.status.success());
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(format!("{}.json", name)).to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_minimal_fixture() {
    let dir = tempfile::tempdir().unwrap();
    fixtures(dir.path());
    let out = hqc(&["verify", "--json", &path(dir.path(), "z2-minimal")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "pass");
    let dims = hqc(&["dims", &path(dir.path(), "z2-minimal")]);
    assert_eq!(stdout(&dims).trim(), "2,4,2");
}

#[test]
fn subshuffle_dims() {
    let dir = tempfile::tempdir().unwrap();
    fixtures(dir.path());
    let out = hqc(&["dims", &path(dir.path(), "z2-subshuffle")]);
    assert_eq!(stdout(&out).trim(), "2,6,18,50,138");
    let capped = Command::new(env!("CARGO_BIN_EXE_hqc")).args(["dims", &path(dir.path(), "z2-subshuffle")]).env("HQC_DEGREE_CAP", "2").output().unwrap();
    assert_eq!(stdout(&capped).trim(), "2,6,18");
    let flag = Command::new(env!("CARGO_BIN_EXE_hqc"))
        .args(["dims", "--degree-cap", "3", &path(dir.path(), "z2-subshuffle")])
        .env("HQC_DEGREE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&flag).trim(), "2,6,18,50");
}

#[test]
fn empty_scenario_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("empty.json");
    std::fs::write(
        &p,
        r#"{"name": "empty", "group": {"kind": "cyclic", "n": 1}, "algebra": "function_algebra",
            "module": {"degree": []}, "extension": {"flavor": "tensor"}}"#,
    )
    .unwrap();
    let out = hqc(&["verify", "--json", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(stdout(&hqc(&["dims", p.to_str().unwrap()])).trim(), "1");
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    fixtures(dir.path());
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = hqc(&["verify", "--degree-cap", "3", "--out", out.to_str().unwrap(), &path(dir.path(), "z2-universal")]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let e1 = hqc(&["export", "--degree-cap", "2", &path(dir.path(), "z2-minimal")]);
    let e2 = hqc(&["export", "--degree-cap", "2", &path(dir.path(), "z2-minimal")]);
    assert_eq!(e1.stdout, e2.stdout);
    let v: Value = serde_json::from_slice(&e1.stdout).unwrap();
    assert_eq!(v["dims"]["1"], 4);
    assert_eq!(v["product"]["0,0"][0][0], "1/1");
}

#[test]
fn pairing_command() {
    let dir = tempfile::tempdir().unwrap();
    fixtures(dir.path());
    let out = hqc(&["pair", "--degree-cap", "3", "--json", &path(dir.path(), "z2-universal")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["checks"].as_array().unwrap().len() >= 3);
    // no partner configured
    assert_eq!(hqc(&["pair", &path(dir.path(), "z2-subshuffle")]).status.code(), Some(2));
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fixtures(dir.path());
    assert_eq!(hqc(&["verify", "/nonexistent/scenario.json"]).status.code(), Some(1));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"name": "x", "colour": 3}"#).unwrap();
    assert_eq!(hqc(&["verify", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(hqc(&["fixtures", "z3"]).status.code(), Some(1));
    // θ* = α₂* is not invariant under the action
    let text = std::fs::read_to_string(path(dir.path(), "z2-subshuffle")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["codifferential"]["theta_star"] = serde_json::json!(["0/1", "0/1", "1/1"]);
    let lit = dir.path().join("lit.json");
    std::fs::write(&lit, v.to_string()).unwrap();
    assert_eq!(hqc(&["build", lit.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn single_fixture_to_stdout() {
    let out = hqc(&["fixtures", "z2-minimal"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["extension"]["flavor"], "nichols");
}
