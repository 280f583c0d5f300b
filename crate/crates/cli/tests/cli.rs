use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn equihom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_equihom")).args(args).output().expect("binary runs")
}

fn verify(dir: &Path, scenario: &str, extra: &[&str]) -> Output {
    let path = dir.join("scenario.json");
    std::fs::write(&path, scenario).unwrap();
    let mut args = vec!["verify", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    equihom(&args)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn passing_scenario_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = verify(
        dir.path(),
        r#"{"schema_version": 1, "seed": 7, "checks": [
            {"check": "iso:green", "group": "symmetric:3", "subgroup": "order:3", "ring": "Z"}]}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["pass"], 1);
    assert_eq!(r["seed"], 7);
    assert_eq!(r["environment"]["tool"], "equihom");
}

#[test]
fn failed_expectation_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = verify(
        dir.path(),
        r#"{"schema_version": 1, "checks": [{"check": "bar-probe", "ring": "dual", "degree": 3, "expect": "zero"}]}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let check = &r["checks"][0];
    assert_eq!(check["status"], "fail");
    assert!(check["details"]["witness"].as_str().unwrap().contains("H_0 = Z"), "{check}");
}

#[test]
fn input_errors_exit_two_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        "{not json",
        r#"{"schema_version": 2, "checks": []}"#,
        r#"{"schema_version": 1, "checks": [{"check": "no-such-check"}]}"#,
        r#"{"schema_version": 1, "checks": [{"check": "reilu", "group": "@missing"}]}"#,
        r#"{"schema_version": 1, "max_degree": 2, "checks": [{"check": "hochschild", "ring": "Z", "degree": 3}]}"#,
    ];
    for case in cases {
        let out = verify(dir.path(), case, &[]);
        assert_eq!(out.status.code(), Some(2), "{case}");
        assert!(out.stdout.is_empty(), "{case}");
        assert!(!out.stderr.is_empty(), "{case}");
    }
    assert_eq!(equihom(&["verify", "/nonexistent/scenario.json"]).status.code(), Some(2));
}

#[test]
fn max_degree_override_admits_deeper_checks() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = r#"{"schema_version": 1, "max_degree": 2, "checks": [{"check": "hochschild", "ring": "Z", "degree": 3}]}"#;
    let out = verify(dir.path(), scenario, &["--max-degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["max_degree"], 3);
}

#[test]
fn report_flag_writes_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let scenario = r#"{"schema_version": 1, "seed": 3, "checks": [
        {"check": "snf-oracle", "instances": 20},
        {"check": "extend-roundtrip", "instances": 10}]}"#;
    let out = verify(dir.path(), scenario, &["--report", target.to_str().unwrap(), "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_slice(&std::fs::read(&target).unwrap()).unwrap();
    assert_eq!(written["seed"], 11);
    assert_eq!(written["summary"]["pass"], 2);
}

#[test]
fn list_checks_is_stable_and_anchored() {
    let first = equihom(&["list-checks"]);
    assert_eq!(first.status.code(), Some(0));
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    assert!(text.contains("reilu\tProp reilu"));
    assert!(text.contains("extend-roundtrip\tTheorem supp"));
    assert!(text.contains("iso:across\tLemma across=cross"));
    assert_eq!(first.stdout, equihom(&["list-checks"]).stdout);
}
