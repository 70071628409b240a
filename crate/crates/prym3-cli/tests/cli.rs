//! End-to-end tests of the command-line surface: exit codes, file round
//! trips and output determinism.

use std::path::Path;
use std::process::{Command, Output};

fn prym3(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prym3"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write_file(dir: &Path, name: &str, contents: &str) {
    std::fs::write(dir.join(name), contents).unwrap();
}

const TYPE_I_FILE: &str = r#"{
  "degree": 6,
  "convention": "left-to-right",
  "branch_points": ["a1", "a2", "a3", "a4"],
  "monodromy": ["(1 2)(3 4)(5 6)", "(1 2)(3 4)(5 6)", "(1 4)(2 5)(3 6)", "(1 4)(2 5)(3 6)"]
}"#;

const BROKEN_PRODUCT_FILE: &str = r#"{
  "degree": 6,
  "convention": "left-to-right",
  "branch_points": ["a1", "a2"],
  "monodromy": ["(1 2)(3 4)(5 6)", "(1 4)(2 5)(3 6)"]
}"#;

#[test]
fn classify_types_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let first = prym3(&["classify-types"], dir.path());
    let second = prym3(&["classify-types"], dir.path());
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8(first.stdout).unwrap();
    assert!(text.matches("(1 ").count() >= 6);
    assert!(text.contains("order  6"));
    assert!(text.contains("order 12"));
    assert!(text.contains("order 36"));
}

#[test]
fn sample_verify_passes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = prym3(
        &["sample", "--alpha", "4", "--beta", "4", "--seed", "7", "--out", "d.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let verify = prym3(
        &["verify", "--input", "d.json", "--report", "r.txt"],
        dir.path(),
    );
    assert_eq!(verify.status.code(), Some(0));
    let report = std::fs::read_to_string(dir.path().join("r.txt")).unwrap();
    assert!(report.starts_with("input_digest=sha256:"));
    assert!(report.trim_end().ends_with("overall=pass"));
    assert!(report.contains("check=projector_descent_identity status=pass"));
}

#[test]
fn equal_seeds_give_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["x.json", "y.json"] {
        let out = prym3(
            &["sample", "--alpha", "6", "--beta", "4", "--seed", "42", "--out", name],
            dir.path(),
        );
        assert!(out.status.success());
    }
    let x = std::fs::read(dir.path().join("x.json")).unwrap();
    let y = std::fs::read(dir.path().join("y.json")).unwrap();
    assert_eq!(x, y);
}

#[test]
fn split_merge_round_trips_byte_identically() {
    let dir = tempfile::tempdir().unwrap();
    let out = prym3(
        &["sample", "--alpha", "4", "--beta", "6", "--seed", "3", "--out", "d.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let split = prym3(
        &["split", "--input", "d.json", "--out1", "f1.json", "--out2", "f2.json"],
        dir.path(),
    );
    assert!(split.status.success());
    let merged = prym3(
        &["merge", "--in1", "f1.json", "--in2", "f2.json", "--out", "m.json"],
        dir.path(),
    );
    assert!(merged.status.success());
    let original = std::fs::read(dir.path().join("d.json")).unwrap();
    let roundtrip = std::fs::read(dir.path().join("m.json")).unwrap();
    assert_eq!(original, roundtrip);
    // factor files carry the degree-3 header
    let f1 = std::fs::read_to_string(dir.path().join("f1.json")).unwrap();
    assert!(f1.contains("\"degree\": 3"));
}

#[test]
fn type_i_input_fails_irreducibility_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "t1.json", TYPE_I_FILE);
    let out = prym3(&["verify", "--input", "t1.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("check=pair_curve_irreducible status=fail"));
    assert!(text.contains("overall=fail"));
}

#[test]
fn broken_product_is_an_input_error_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    write_file(dir.path(), "bad.json", BROKEN_PRODUCT_FILE);
    let out = prym3(&["verify", "--input", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = prym3(&["verify", "--input", "nowhere.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn genera_prints_prym_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let out = prym3(
        &["sample", "--alpha", "6", "--beta", "6", "--seed", "1", "--out", "d.json"],
        dir.path(),
    );
    assert!(out.status.success());
    let genera = prym3(&["genera", "--input", "d.json"], dir.path());
    assert!(genera.status.success());
    let text = String::from_utf8(genera.stdout).unwrap();
    assert!(text.contains("dim P = 2"));
    assert!(text.contains("base genus = 5"));
}

#[test]
fn census_reports_comparison_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let out = prym3(&["census"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("computed: 8 invariant classes"));
    assert!(text.contains("stated census: 8 invariant classes, 14 swapped pairs"));
}

#[test]
fn paper_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = prym3(&["paper-suite"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("[PASS]").count(), 11);
    assert_eq!(text.matches("[FAIL]").count(), 0);
}
