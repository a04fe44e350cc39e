//! End-to-end tests driving the `kncrystal` binary.

use std::process::{Command, Output};

fn kncrystal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kncrystal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = kncrystal(args);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

const FIXTURE: &str = r#"{"type":"B","n":2,"spin":[2,-1],"columns":[[0]]}"#;

#[test]
fn keys_verb_reports_the_worked_pair() {
    let out = stdout_of(&["keys", FIXTURE, "--type", "B", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ell"], 3);
    assert_eq!(v["right"]["spin"], serde_json::json!([-2, -1]));
    assert_eq!(v["right"]["columns"], serde_json::json!([[-2]]));
    assert_eq!(v["left"]["spin"], serde_json::json!([2, -1]));
    assert_eq!(v["left"]["columns"], serde_json::json!([[2]]));
}

#[test]
fn keys_verb_rejects_contradictory_rank() {
    let out = kncrystal(&["keys", FIXTURE, "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn split_and_unsplit_roundtrip_via_json() {
    let split = stdout_of(&["split", "--json", FIXTURE]);
    let v: serde_json::Value = serde_json::from_str(&split).unwrap();
    assert_eq!(v["columns"], serde_json::json!([[2, -1], [2], [-2]]));
    // Pipe the JSON back through unsplit (spin inferred from odd parts).
    let back = stdout_of(&["unsplit", "--json", split.trim()]);
    let b: serde_json::Value = serde_json::from_str(&back).unwrap();
    assert_eq!(b, serde_json::from_str::<serde_json::Value>(FIXTURE).unwrap());
}

#[test]
fn evac_verb_matches_the_worked_example() {
    let out = stdout_of(&["evac", "--json", FIXTURE]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["spin"], serde_json::json!([1, 2]));
    assert_eq!(v["columns"], serde_json::json!([[-2]]));
}

#[test]
fn rect_verb_rectifies_the_worked_skew() {
    let skew = r#"{"type":"C","n":3,"columns":[[1],[3,-3],[3,-3]],"inner":[2,1]}"#;
    let out = stdout_of(&["rect", "--json", skew]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["columns"], serde_json::json!([[1, 3, -3], [2], [-2]]));
}

#[test]
fn virtualize_with_check_passes() {
    let out = kncrystal(&["virtualize", "--check", "--json", FIXTURE]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(v["type"], "C");
    assert_eq!(v["columns"], serde_json::json!([[2, -1], [2], [-2]]));
}

#[test]
fn graph_summary_and_deterministic_dot() {
    let summary = stdout_of(&[
        "graph",
        "--type",
        "B",
        "--n",
        "2",
        "--shape",
        r#"{"spin":true,"rows":[1]}"#,
    ]);
    let v: serde_json::Value = serde_json::from_str(&summary).unwrap();
    assert_eq!(v["vertices"], 16);
    assert_eq!(v["extremal"], 8);
    assert_eq!(v["ell"], 3);
    let dot_args = [
        "graph", "--type", "C", "--n", "2", "--shape", "[1]", "--dot",
    ];
    let d1 = stdout_of(&dot_args);
    let d2 = stdout_of(&dot_args);
    assert_eq!(d1, d2, "DOT output must be byte-for-byte deterministic");
    assert!(d1.contains("digraph"));
    assert!(d1.contains("peripheries=2"));
}

#[test]
fn graph_of_zero_weight_is_one_node() {
    let d = stdout_of(&["graph", "--type", "C", "--n", "2", "--shape", "[]", "--dot"]);
    assert_eq!(d.matches("label=").count(), 1);
    assert_eq!(d.matches("->").count(), 0);
}

#[test]
fn verify_keys_suite_is_clean() {
    let out = stdout_of(&["verify", "--suite", "keys", "--json"]);
    let reports: serde_json::Value = serde_json::from_str(&out).unwrap();
    for case in reports[0]["cases"].as_array().unwrap() {
        assert_eq!(
            case["failures"].as_array().unwrap().len(),
            0,
            "case {} failed",
            case["name"]
        );
    }
}

#[test]
fn verify_corrupt_names_c1() {
    let out = stdout_of(&["verify", "--suite", "axioms", "--corrupt", "--json"]);
    let reports: serde_json::Value = serde_json::from_str(&out).unwrap();
    let failures = reports[0]["cases"][0]["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert!(failures[0].as_str().unwrap().contains("(C1)"));
}

#[test]
fn conjecture_scan_is_labeled_experimental() {
    let out = kncrystal(&[
        "conjecture-scan",
        "--type",
        "B",
        "--n",
        "2",
        "--shape",
        r#"{"spin":true,"rows":[1]}"#,
        "--m",
        "6",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("EXPERIMENTAL"));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lcm of extremal-string lengths: 6"));
}

#[test]
fn invalid_tableau_exits_one_with_diagnostic() {
    let out = kncrystal(&["evac", r#"{"type":"B","n":2,"columns":[[1,2,-1]]}"#]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("column"), "diagnostic names the clause: {}", err);
}

#[test]
fn malformed_json_exits_one() {
    let out = kncrystal(&["split", "{not json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn text_output_uses_overbars() {
    let out = stdout_of(&["evac", FIXTURE]);
    assert!(out.contains('\u{0304}'), "barred entries render with macrons");
    assert!(out.contains('|'), "spin column separated from the body");
}

#[test]
fn exploration_budget_guardrail() {
    let out = kncrystal(&[
        "graph", "--type", "B", "--n", "2", "--shape",
        r#"{"spin":true,"rows":[1]}"#, "--budget", "3",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("budget"), "message: {}", err);
}
