//! End-to-end tests of the `altspace` binary.

use std::process::{Command, Output};

use altspace::cli::RunReport;
use serde_json::Value;

fn altspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altspace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> RunReport {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn values(r: &RunReport) -> Vec<&str> {
    r.rows.iter().map(|row| row.value.as_str()).collect()
}

#[test]
fn table_dis() {
    let out = altspace(&["table", "dis", "--q", "2", "--n-max", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.command, "table");
    assert_eq!(values(&r), ["1", "8", "2389"]);
    assert!(r
        .rows
        .iter()
        .all(|row| row.formula == "dis" && row.q == Some(2) && row.oracle.is_none()));
}

#[test]
fn table_graph_sequences() {
    let r = report(&altspace(&["table", "connected", "--n-max", "4"]));
    assert_eq!(values(&r), ["1", "1", "4", "38"]);
    let r = report(&altspace(&["table", "nds", "--q", "1", "--n-max", "3"]));
    assert_eq!(values(&r), ["1", "0", "1", "4"]);
}

#[test]
fn verify_nds() {
    let out = altspace(&[
        "verify", "--scope", "nds", "--q", "2", "--n-max", "4", "--jobs", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r.rows.len(), 5);
    assert!(r.rows.iter().all(|row| row.matches == Some(true)));
}

#[test]
fn verify_read_q() {
    let out = altspace(&[
        "verify", "--scope", "read-q", "--q", "2", "--n-max", "3", "--c", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out).all_match());
}

#[test]
fn perturbed_formula_is_a_mismatch() {
    let out = altspace(&[
        "verify",
        "--scope",
        "nds",
        "--q",
        "2",
        "--n-max",
        "3",
        "--perturb",
        "nds",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert!(r.rows.iter().all(|row| row.matches == Some(false)));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["table", "bogus", "--n-max", "3"][..],
        &["table", "read-q", "--q", "2", "--n-max", "3"],
        &["table", "nds", "--n-max", "3"],
        &["verify", "--scope", "nds", "--n-max", "3"],
        &["verify", "--scope", "nope", "--q", "2", "--n-max", "3"],
        &["verify", "--scope", "nds", "--q", "4", "--n-max", "3"],
        &["series", "--q", "2", "--order", "0"],
        &["frobnicate"],
    ] {
        let out = altspace(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn over_budget_exits_2() {
    let out = altspace(&[
        "verify", "--scope", "nds", "--q", "2", "--n-max", "4", "--budget", "1000",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn series_identities() {
    for (q, order) in [("1", "10"), ("2", "6"), ("3", "1")] {
        let out = altspace(&["series", "--q", q, "--order", order]);
        assert_eq!(out.status.code(), Some(0));
        let r = report(&out);
        assert_eq!(r.rows.len().to_string(), order);
        assert!(r.all_match());
    }
}

#[test]
fn json_round_trips_byte_for_byte() {
    let out = altspace(&[
        "verify",
        "--scope",
        "census,connected",
        "--q",
        "3",
        "--n-max",
        "3",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", text);
    let typed: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(typed.to_json(), text);
}

#[test]
fn values_are_decimal_strings() {
    let out = altspace(&["table", "graphs", "--n-max", "14"]);
    let parsed: Value = serde_json::from_slice(&out.stdout).unwrap();
    let last = parsed["rows"].as_array().unwrap().last().unwrap();
    assert_eq!(
        last["value"],
        Value::String(format!("{}", num_bigint::BigUint::from(2u32).pow(91)))
    );
    assert!(last.get("oracle").is_none());
}

#[test]
fn jobs_do_not_change_the_report() {
    let base = [
        "verify",
        "--scope",
        "dis,ortho-q",
        "--q",
        "2",
        "--n-max",
        "3",
        "--c",
        "2,3",
    ];
    let one = altspace(&[&base[..], &["--jobs", "1"]].concat());
    let four = altspace(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = altspace(&[
        "verify",
        "--scope",
        "read",
        "--c",
        "2",
        "--n-max",
        "3",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "formula,n,c,q,value,oracle,match");
    assert_eq!(lines[1], "read,0,2,,0,0,true");
    assert_eq!(lines[4], "read,3,2,,24,24,true");
}

#[test]
fn timings_go_to_stderr() {
    let plain = altspace(&["verify", "--scope", "connected", "--n-max", "4"]);
    let timed = altspace(&[
        "verify",
        "--scope",
        "connected",
        "--n-max",
        "4",
        "--timings",
    ]);
    assert_eq!(plain.stdout, timed.stdout);
    assert!(String::from_utf8_lossy(&timed.stderr).contains("ms"));
}
