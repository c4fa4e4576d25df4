use std::process::{Command, Output};

use serde_json::Value;

fn kirwan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kirwan"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = kirwan(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

const SINGULAR: &str = r#"{"rows":[[[1,0,0],[0,0,0]],[[0,1,0],[0,0,1]]]}"#;
const IRRATIONAL: &str = r#"{"phi":[[0,1,0],[0,0,0],[0,-2,0]]}"#;

#[test]
fn report_shape() {
    let r = report(&["classify-pencil", "--input", "fixtures/stable_1.json"]);
    assert_eq!(r["command"], "classify-pencil");
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
    assert!(r["notes"].is_array());
    assert_eq!(r["result"]["stability_x"], "Stable");
}

#[test]
fn deterministic_output() {
    for args in [
        &["classify-family", "--input", "fixtures/two_stage.json"][..],
        &["trees", "--charge", "3"],
        &["fixtures"],
    ] {
        assert_eq!(kirwan(args).stdout, kirwan(args).stdout, "{args:?}");
    }
}

#[test]
fn digest_ignores_formatting() {
    let a = report(&["canonical", "--json", IRRATIONAL]);
    let b = report(&["canonical", "--json", "{ \"phi\" : [[0,1,0], [0,0,0], [0,-2,0]] }"]);
    assert_eq!(a["input_digest"], b["input_digest"]);
}

#[test]
fn family_types() {
    for (file, kind) in [
        ("single_point_t", "Type1"),
        ("two_points_t", "Type2"),
        ("two_points_t2", "Type2"),
        ("two_stage", "Type3"),
    ] {
        let r = report(&["classify-family", "--input", &format!("fixtures/{file}.json")]);
        assert_eq!(r["result"]["type"], kind, "{file}");
    }
    let r = report(&["classify-family", "--input", "fixtures/single_point_t.json"]);
    assert!(r["result"]["exceptional_conic"].is_object());
}

#[test]
fn tree_counts() {
    for (n, count) in [(1, 2), (2, 6), (3, 20)] {
        let r = report(&["trees", "--charge", &n.to_string()]);
        assert_eq!(r["result"]["weighted"].as_array().unwrap().len(), count, "charge {n}");
    }
}

#[test]
fn singular_pencil() {
    let r = report(&["classify-pencil", "--json", SINGULAR]);
    assert_eq!(r["result"]["stability_x"], "ProperlySemistable");
    let points = r["result"]["singularities"]["singular_points"].as_array().unwrap();
    assert_eq!(points.len(), 1);
    assert_eq!(points[0], serde_json::json!(["1", "0", "0"]));
}

#[test]
fn field_extension_policy() {
    let r = report(&["canonical", "--json", IRRATIONAL]);
    assert!(r["notes"].to_string().contains("sqrt(2)"));
    let out = kirwan(&["canonical", "--json", IRRATIONAL, "--field-ext", "deny"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixtures_pass() {
    let r = report(&["fixtures"]);
    let rows = r["result"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|row| row["ok"] == true));
}

#[test]
fn text_format() {
    let out = kirwan(&["--format", "text", "trees", "--charge", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: trees"));
    assert!(text.contains("notes:"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| kirwan(args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["no-such-command"]), Some(1));
    assert_eq!(code(&["classify-pencil", "--json", "{not json"]), Some(1));
    assert_eq!(code(&["classify-pencil", "--json", r#"{"rows":[]}"#]), Some(1));
    assert_eq!(code(&["classify-pencil"]), Some(1));
    // dependent rows
    assert_eq!(code(&["classify-pencil", "--json", r#"{"rows":[[[1,0,0],[0,1,0]],[[2,0,0],[0,2,0]]]}"#]), Some(2));
    assert_eq!(code(&["trees", "--charge", "9"]), Some(2));
}
