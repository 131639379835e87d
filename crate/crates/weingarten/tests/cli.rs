use std::process::Command;

use weingarten::cli::{run, Outcome};
use weingarten::report::report_from_csv;

fn wg(args: &[&str]) -> Outcome {
    let mut argv = vec!["weingarten"];
    argv.extend_from_slice(args);
    run(argv)
}

fn ok(args: &[&str]) -> String {
    let out = wg(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn eval_examples() {
    assert_eq!(ok(&["eval", "--group", "U", "--n", "2", "--class", "2", "--N", "3", "--method", "closed"]), "-1/24\n");
    assert_eq!(ok(&["eval", "--group", "U", "--n", "1", "--N", "7"]), "1/7\n");
    let gram = ok(&["eval", "--group", "U", "--n", "3", "--class", "3", "--N", "10", "--method", "gram"]);
    let rec = ok(&["eval", "--group", "U", "--n", "3", "--class", "3", "--N", "10", "--method", "recursion"]);
    assert_eq!(gram, rec);
    assert_eq!(gram, "1/47520\n");
}

#[test]
fn eval_json_round_trips() {
    let text = ok(&["eval", "--group", "O", "--n", "3", "--N", "9/2", "--format", "json"]);
    let table = weingarten::table::table_from_json(&text).unwrap();
    assert_eq!(weingarten::table::table_to_json(&table), text);
}

#[test]
fn eval_symplectic_marks_sign() {
    let out = ok(&["eval", "--group", "SP", "--class", "1,1", "--N", "4"]);
    assert!(out.starts_with('±'), "{out}");
}

#[test]
fn paths_examples() {
    assert_eq!(ok(&["paths", "--group", "U", "--class", "3", "--n", "3", "--g", "0"]), "2\n");
    assert_eq!(ok(&["paths", "--group", "U", "--class", "1,1", "--n", "2", "--g", "1"]), "1\n");
    assert_eq!(ok(&["paths", "--group", "O", "--pairing", "{1-2,3-4}", "--g1", "0", "--g2", "0"]), "1\n");
}

#[test]
fn paths_csv() {
    let csv = ok(&["paths", "--sigma", "(1 2 3 4)", "--g-max", "1", "--format", "csv"]);
    assert_eq!(csv, "state,g,count\n(1 2 3 4),0,5\n(1 2 3 4),1,70\n");
}

#[test]
fn sample_trace_is_deterministic() {
    let args = ["sample", "--group", "U", "--lambda", "1,1,1", "--seed", "1"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    let lines: Vec<_> = a.lines().collect();
    // three dashed steps and the empty state
    assert_eq!(lines.len(), 4);
    assert!(lines[3].contains("\"n_t\":0"));
}

#[test]
fn sample_lsum_report() {
    let out = ok(&["sample", "--lambda", "4", "--stat", "Lsum", "--samples", "1000", "--seed", "7"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["count"], 1000);
    assert!(v["SE"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_examples() {
    let out = wg(&["verify", "--claim", "main", "--n", "2", "--N", "100000"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = wg(&["verify", "--claim", "paths", "--n", "1", "--format", "csv"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rows = report_from_csv(&out.stdout).unwrap();
    assert!(rows.iter().filter(|r| r.claim.starts_with("path")).all(|r| r.lhs.to_f64() == 0.0));
    assert_eq!(wg(&["verify", "--claim", "log", "--n", "5", "--N", "10000"]).code, 0);
}

#[test]
fn verify_main_golden() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = wg(&["verify", "--claim", "main", "--n", "3", "--N", "100000", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, include_str!("golden/main_n3_N100000.csv"));
}

#[test]
fn exit_codes() {
    for (args, code) in [
        (&["eval", "--n", "2", "--N", "0.5"][..], 2),
        (&["eval", "--n", "2", "--N", "1/0"][..], 2),
        (&["eval", "--class", "2,1", "--sigma", "(1 2)", "--N", "5"][..], 2),
        (&["eval", "--n", "3", "--class", "2", "--N", "5"][..], 2),
        (&["paths", "--n", "9", "--g", "2"][..], 3),
        (&["eval", "--group", "U", "--n", "2", "--N", "1"][..], 4),
        (&["frobnicate"][..], 2),
    ] {
        let out = wg(args);
        assert_eq!(out.code, code, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn binary_exit_code_and_streams() {
    let bin = env!("CARGO_BIN_EXE_weingarten");
    let out = Command::new(bin).args(["eval", "--n", "1", "--N", "7"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(out.stdout, b"1/7\n");
    let out = Command::new(bin).args(["paths", "--n", "9", "--g", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}
