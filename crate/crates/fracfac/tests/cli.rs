//! End-to-end tests of the `fracfac` binary: construction pipelines, JSON
//! shape, the file format through real files, and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

fn fracfac(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fracfac"));
    cmd.args(args);
    cmd
}

fn run_ok(args: &[&str]) -> Output {
    let out = fracfac(args).output().expect("binary runs");
    assert!(
        out.status.success(),
        "fracfac {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn run_code(args: &[&str], expected: i32) -> Output {
    let out = fracfac(args).output().expect("binary runs");
    assert_eq!(
        out.status.code(),
        Some(expected),
        "fracfac {args:?}: stderr = {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn analyze_reports_the_doubled_half_fraction() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ten.fracfac");
    run_ok(&[
        "family",
        "--name",
        "5N16",
        "--t",
        "1",
        "--output",
        path_str(&file),
    ]);

    let table = run_ok(&["analyze", path_str(&file)]);
    let text = String::from_utf8(table.stdout).unwrap();
    assert!(text.contains("N:            32"));
    assert!(text.contains("resolution:   4"));
    assert!(text.contains("m (non-main): 2 x20, 5 x1"));
    assert!(text.contains("maximal:      true"));

    let json = stdout_json(&run_ok(&["analyze", path_str(&file), "--json"]));
    assert_eq!(json["N"], 32);
    assert_eq!(json["n"], 10);
    assert_eq!(json["p"], 5);
    assert_eq!(json["resolution"], 4);
    assert_eq!(json["strength"], 3);
    assert_eq!(
        json["wlp"],
        serde_json::json!([0, 0, 0, 10, 16, 0, 0, 5, 0, 0])
    );
    assert_eq!(json["g"], 31);
    assert_eq!(json["f"], 21);
    assert_eq!(json["is_even"], false);
    assert_eq!(json["is_maximal"], true);
    assert_eq!(json["fingerprint-hash"], "7881f8e2e206620d");
}

#[test]
fn full_factorial_analysis_has_no_words() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("full.fracfac");
    run_ok(&[
        "family",
        "--name",
        "full",
        "--k",
        "3",
        "--output",
        path_str(&file),
    ]);
    let json = stdout_json(&run_ok(&["analyze", path_str(&file), "--json"]));
    assert_eq!(json["p"], 0);
    assert_eq!(json["resolution"], "full");
    assert_eq!(json["strength"], 3);
    assert_eq!(json["wlp"], serde_json::json!([0, 0, 0]));
    // Adding the all-ones column keeps resolution IV, so not maximal.
    assert_eq!(json["is_maximal"], false);
}

#[test]
fn projection_identity_round_trips_byte_exact() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ten.fracfac");
    run_ok(&[
        "family",
        "--name",
        "5N16",
        "--t",
        "1",
        "--output",
        path_str(&file),
    ]);
    let original = std::fs::read(&file).unwrap();

    let out = run_ok(&["project", path_str(&file), "--keep", "1,2,3,4,5,6,7,8,9,10"]);
    assert_eq!(
        out.stdout, original,
        "identity projection reprints the file"
    );
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("N=32 n=10 resolution=4"));
}

#[test]
fn doubling_and_projection_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let ten = dir.path().join("ten.fracfac");
    let twenty = dir.path().join("twenty.fracfac");
    run_ok(&[
        "family",
        "--name",
        "5N16",
        "--t",
        "1",
        "--output",
        path_str(&ten),
    ]);

    let out = run_ok(&["double", path_str(&ten), "--output", path_str(&twenty)]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("N=64 n=20 resolution=4"));
    let json = stdout_json(&run_ok(&["analyze", path_str(&twenty), "--json"]));
    assert_eq!(json["n"], 20);
    assert_eq!(json["wlp"][3], 125); // 8*10 + C(10,2)

    // Factor numbers on the command line are 1-based.
    let nine = dir.path().join("nine.fracfac");
    run_ok(&[
        "project",
        path_str(&ten),
        "--drop",
        "1",
        "--output",
        path_str(&nine),
    ]);
    let json = stdout_json(&run_ok(&["analyze", path_str(&nine), "--json"]));
    assert_eq!(json["n"], 9);
    assert_eq!(json["wlp"], serde_json::json!([0, 0, 0, 6, 8, 0, 0, 1, 0]));
}

#[test]
fn foldover_of_saturated_resolution_three() {
    let dir = tempfile::tempdir().unwrap();
    let sat = dir.path().join("sat3.fracfac");
    let folded = dir.path().join("folded.fracfac");
    run_ok(&[
        "family",
        "--name",
        "sat3",
        "--k",
        "3",
        "--output",
        path_str(&sat),
    ]);
    run_ok(&[
        "foldover",
        path_str(&sat),
        "--add-factor",
        "--output",
        path_str(&folded),
    ]);
    let json = stdout_json(&run_ok(&["analyze", path_str(&folded), "--json"]));
    assert_eq!(json["N"], 16);
    assert_eq!(json["n"], 8);
    assert_eq!(json["resolution"], 4);
    assert_eq!(json["is_even"], true);
}

#[test]
fn family_to_stdout_is_the_serialized_design() {
    let out = run_ok(&["family", "--name", "full", "--k", "2"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "fracfac v1\nk 2\nn 2\ncols 10 01\n"
    );
    assert!(String::from_utf8(out.stderr).unwrap().contains("N=4 n=2"));
}

#[test]
fn maximal_search_reports_classes_as_json() {
    let out = run_ok(&[
        "search", "maximal", "--k", "4", "--n-min", "5", "--n-max", "8",
    ]);
    let json = stdout_json(&out);
    assert_eq!(json["count"], 2);
    assert_eq!(json["classes"][0]["k"], 4);
    assert_eq!(
        json["classes"][0]["columns"],
        serde_json::json!(["0001", "0010", "0100", "1000", "1111"])
    );
    assert_eq!(json["classes"][1]["columns"].as_array().unwrap().len(), 8);
}

#[test]
fn projection_search_dedupes_winners() {
    let dir = tempfile::tempdir().unwrap();
    let ten = dir.path().join("ten.fracfac");
    run_ok(&[
        "family",
        "--name",
        "5N16",
        "--t",
        "1",
        "--output",
        path_str(&ten),
    ]);
    let json = stdout_json(&run_ok(&[
        "search",
        "ma-projection",
        "--base",
        path_str(&ten),
        "--n",
        "9",
        "--dedupe",
    ]));
    assert_eq!(json["visited"], 10);
    assert_eq!(json["ties"], true);
    assert_eq!(
        json["best_wlp"],
        serde_json::json!([0, 0, 0, 6, 8, 0, 0, 1, 0])
    );
    assert_eq!(json["winners"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_laws_exit_zero_on_the_corpus() {
    let out = run_ok(&["verify", "--law", "thm4.1-ineq", "--t-max", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("thm4.1-ineq: 2 passed, 0 failed, 0 skipped"));

    let out = run_ok(&["verify", "--law", "cor2.4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("cor2.4: 193 passed, 0 failed, 0 skipped"));
}

#[test]
fn verify_accepts_a_single_design_file() {
    let dir = tempfile::tempdir().unwrap();
    let ten = dir.path().join("ten.fracfac");
    run_ok(&[
        "family",
        "--name",
        "5N16",
        "--t",
        "1",
        "--output",
        path_str(&ten),
    ]);
    let out = run_ok(&["verify", "--law", "thm2.3", "--design", path_str(&ten)]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("thm2.3: 1 passed"));

    // Pairwise laws run on the corpus only.
    run_code(
        &["verify", "--law", "cor2.4", "--design", path_str(&ten)],
        2,
    );
}

#[test]
fn exit_code_2_for_unusable_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fracfac");
    std::fs::write(&bad, "not a design file\n").unwrap();
    let out = run_code(&["analyze", path_str(&bad)], 2);
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 1"));

    run_code(
        &["analyze", path_str(&dir.path().join("absent.fracfac"))],
        2,
    );
    run_code(&["family", "--name", "sat4"], 2); // missing --k
    let ten = dir.path().join("ten.fracfac");
    run_ok(&[
        "family",
        "--name",
        "5N16",
        "--t",
        "1",
        "--output",
        path_str(&ten),
    ]);
    run_code(&["project", path_str(&ten)], 2); // neither --keep nor --drop
    run_code(
        &["project", path_str(&ten), "--keep", "1", "--drop", "2"],
        2,
    );
    run_code(&["verify", "--law", "no-such-law"], 2);
}

#[test]
fn exit_code_3_for_invariant_violations() {
    let dir = tempfile::tempdir().unwrap();
    let dup = dir.path().join("dup.fracfac");
    std::fs::write(&dup, "fracfac v1\nk 3\nn 2\ncols 101 101\n").unwrap();
    let out = run_code(&["analyze", path_str(&dup)], 3);
    assert!(String::from_utf8(out.stderr).unwrap().contains("identical"));

    let zero = dir.path().join("zero.fracfac");
    std::fs::write(&zero, "fracfac v1\nk 3\nn 2\ncols 101 000\n").unwrap();
    run_code(&["analyze", path_str(&zero)], 3);
}

#[test]
fn exit_code_4_for_size_caps() {
    let dir = tempfile::tempdir().unwrap();
    let ten = dir.path().join("ten.fracfac");
    run_ok(&[
        "family",
        "--name",
        "5N16",
        "--t",
        "1",
        "--output",
        path_str(&ten),
    ]);
    run_code(&["double", path_str(&ten), "--times", "30"], 4);
}

#[test]
fn exit_code_5_when_the_search_budget_overflows() {
    let dir = tempfile::tempdir().unwrap();
    let sat = dir.path().join("sat4k5.fracfac");
    run_ok(&[
        "family",
        "--name",
        "sat4",
        "--k",
        "5",
        "--output",
        path_str(&sat),
    ]);
    let out = fracfac(&[
        "search",
        "ma-projection",
        "--base",
        path_str(&sat),
        "--n",
        "9",
    ])
    .env("FRACFAC_BUDGET", "10")
    .output()
    .expect("binary runs");
    assert_eq!(out.status.code(), Some(5));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("11440") && err.contains("budget"),
        "stderr: {err}"
    );
}
