//! End-to-end tests of the `yangian` binary: exit codes, text output, and
//! byte-deterministic JSON reports.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yangian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn decompose_reports_the_canonical_strings() {
    let out = run(&["decompose", "0,1,1,2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("S_3(0) + S_1(1)"), "{}", text);
    assert!(text.contains("result: ok"), "{}", text);

    let out = run(&["decompose", "3/2"]);
    assert!(stdout(&out).contains("S_1(3/2)"));

    // Non-integer differences never join into one string.
    let out = run(&["decompose", "0,1/2"]);
    assert!(stdout(&out).contains("S_1(0) + S_1(1/2)"));
}

#[test]
fn character_cross_checks_pass() {
    let out = run(&["character", "0,1", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("dimension: 3"), "{}", text);
    assert!(text.contains("character (3 terms)"), "{}", text);

    let out = run(&["character", "0,1,1", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dimension: 6"));

    let out = run(&["character", "5", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("character (2 terms)"));
}

#[test]
fn build_and_dim_agree() {
    let out = run(&["build", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("constructed module dimension: 3"));

    let out = run(&["dim", "0,1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dimension: 4"));
}

#[test]
fn parse_and_usage_errors_exit_with_code_two() {
    for bad in ["1/0", "2^0", "", "0,,1", "1 x"] {
        let out = run(&["decompose", bad]);
        assert_eq!(out.status.code(), Some(2), "input {:?}", bad);
        assert!(stderr(&out).contains("position"), "input {:?}", bad);
    }
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_deterministic() {
    let a = run(&["--json", "verify", "hopf", "--seed", "3"]);
    let b = run(&["--json", "verify", "hopf", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0), "stderr: {}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);

    let a = run(&["--json", "decompose", "0,1,1,2"]);
    let b = run(&["--json", "decompose", "0,1,1,2"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_reports_carry_the_documented_shapes() {
    let out = run(&["--json", "decompose", "0,1,1,2"]);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    assert_eq!(v["command"], "decompose");
    assert_eq!(
        v["outputs"]["decomposition"],
        serde_json::json!([
            {"len": 3, "mult": 1, "start": "0"},
            {"len": 1, "mult": 1, "start": "1"},
        ])
    );
    assert_eq!(v["outputs"]["dimension"], 8);
    for check in v["checks"].as_array().unwrap() {
        assert_eq!(check["status"], "pass", "{}", check);
    }

    let out = run(&["--json", "character", "0,1"]);
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    let terms = v["outputs"]["character"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    for term in terms {
        assert!(term["num"].is_array());
        assert!(term["den"].is_array());
        assert_eq!(term["mult"], 1);
    }
    assert_eq!(v["outputs"]["dimension"], 3);
}

#[test]
fn verify_relations_passes_at_small_bounds() {
    let out = run(&[
        "verify",
        "relations",
        "--max-r",
        "2",
        "--max-level",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("result: ok"));
}

#[test]
fn negative_controls_are_reported_as_expected_failures() {
    let out = run(&[
        "--json",
        "verify",
        "characters",
        "--max-deg",
        "2",
        "--negative-controls",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid json");
    let statuses: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"expected-fail"), "{:?}", statuses);
    assert!(statuses.iter().all(|s| *s == "pass" || *s == "expected-fail"));
}

#[test]
fn the_deg_alias_is_accepted() {
    let out = run(&[
        "verify",
        "tensor-theorem",
        "--deg",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("50 of 50 modules built"));
}
