//! One line per acceptance criterion, run against `scenarios/acceptance.json`.
//!
//! Each criterion runs the checks it owns as its own scenario so the
//! wall-clock bound applies to that criterion alone.

use std::process::Command;
use std::time::{Duration, Instant};

use equihom_cli::{run_text, Overrides, Report, RunOptions, Status};
use serde_json::Value;

const SCENARIO: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scenarios/acceptance.json");

struct Criterion {
    number: u8,
    name: &'static str,
    ids: &'static [&'static str],
    budget: Duration,
    per_check: bool,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, name: "reilu cross-check", ids: &["reilu"], budget: Duration::from_secs(60), per_check: false },
    Criterion { number: 2, name: "green imprimitivity", ids: &["iso:green", "iso"], budget: Duration::from_secs(5), per_check: true },
    Criterion { number: 3, name: "across = cross", ids: &["iso:across"], budget: Duration::from_secs(5), per_check: false },
    Criterion { number: 4, name: "extension theorem", ids: &["extend-roundtrip", "extend"], budget: Duration::from_secs(120), per_check: false },
    Criterion { number: 5, name: "excision probes", ids: &["bar-probe", "bar-sum-iff"], budget: Duration::from_secs(60), per_check: false },
    Criterion { number: 6, name: "yoneda coend", ids: &["yoneda"], budget: Duration::from_secs(60), per_check: false },
    Criterion { number: 7, name: "cone homotopy", ids: &["cone-homotopy"], budget: Duration::from_secs(10), per_check: false },
    Criterion { number: 8, name: "snf oracle", ids: &["snf-oracle", "snf-homology"], budget: Duration::from_secs(60), per_check: false },
    Criterion { number: 9, name: "conjugacy decomposition", ids: &["conjugacy-split"], budget: Duration::from_secs(30), per_check: false },
];

fn scenario() -> Value {
    let text = std::fs::read_to_string(SCENARIO).expect("acceptance scenario is readable");
    serde_json::from_str(&text).expect("acceptance scenario is JSON")
}

fn restricted(full: &Value, ids: &[&str]) -> String {
    let mut sub = full.clone();
    let checks = sub["checks"].as_array_mut().unwrap();
    checks.retain(|c| ids.contains(&c["check"].as_str().unwrap_or("")));
    assert!(!checks.is_empty(), "no checks for {ids:?}");
    sub.to_string()
}

fn line(number: u8, name: &str, ok: bool, detail: &str) -> bool {
    println!("criterion {number:>2} {:<4} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn failures(report: &Report) -> Vec<String> {
    report
        .checks
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{} {:?} {}", c.id, c.status, c.details))
        .collect()
}

fn criterion(full: &Value, c: &Criterion) -> bool {
    let text = restricted(full, c.ids);
    let start = Instant::now();
    let report = run_text(&text, Overrides::default(), RunOptions { jobs: None, timings: true }).expect("scenario parses");
    let elapsed = if c.per_check {
        report.checks.iter().filter_map(|r| r.ms).map(Duration::from_millis).max().unwrap_or_default()
    } else {
        start.elapsed()
    };
    let bad = failures(&report);
    for b in &bad {
        println!("    {b}");
    }
    let ok = bad.is_empty() && elapsed < c.budget;
    let detail = format!(
        "{}/{} checks, {:.2} s{} (bound {} s)",
        report.summary.pass,
        report.checks.len(),
        elapsed.as_secs_f64(),
        if c.per_check { " slowest" } else { "" },
        c.budget.as_secs()
    );
    line(c.number, c.name, ok, &detail)
}

fn determinism(full: &Value) -> bool {
    let text = full.to_string();
    let render = |jobs| run_text(&text, Overrides::default(), RunOptions { jobs, timings: false }).unwrap().to_json();
    let parallel = render(None);
    let library = parallel == render(Some(1));

    let bin = env!("CARGO_BIN_EXE_equihom");
    let invoke = || Command::new(bin).args(["verify", SCENARIO]).output().expect("binary runs").stdout;
    let first = invoke();
    let binary = !first.is_empty() && first == invoke() && first.as_slice() == parallel.as_bytes();

    line(10, "determinism", library && binary, &format!("parallel vs --jobs 1 identical: {library}, two binary runs identical: {binary}"))
}

fn main() {
    let full = scenario();
    let mut passed = 0;
    for c in CRITERIA {
        passed += criterion(&full, c) as usize;
    }
    passed += determinism(&full) as usize;
    let total = CRITERIA.len() + 1;
    println!("{passed}/{total} criteria pass");
    if passed != total {
        std::process::exit(1);
    }
}
