//! End-to-end checks of the `teich` binary: output fixtures, determinism,
//! exit codes, JSON well-formedness, and the loop-file interface.

use std::process::{Command, Output};

fn teich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_teich"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = teich(args);
    assert!(
        out.status.success(),
        "teich {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn poly_simplest_braid() {
    let out = stdout(&["poly", "--strands", "3", "--braid", "-1 2"]);
    assert_eq!(out.trim(), "u^2 - (t + 1 + t^-1)*u + 1");
}

#[test]
fn poly_magic_braid() {
    let out = stdout(&["poly", "--strands", "3", "--braid", "2 -1 2"]);
    assert_eq!(out.trim(), "u^2 - (tA*tB + tB + 1 + tA^-1)*u + tB");
}

#[test]
fn poly_family_member() {
    let out = stdout(&["poly", "--family", "appendix-a", "--n", "2"]);
    assert_eq!(
        out.trim(),
        "u^5 - t^-2*u^4 - t^-3*u^3 - t^-4*u^2 - t^-5*u + t^-7"
    );
}

#[test]
fn eval_at_base_class() {
    let out = stdout(&["eval", "--strands", "3", "--braid", "-1 2", "--class", "0,1"]);
    assert!(out.contains("X^2 - 3*X + 1"));
    assert!(out.contains("2.618033989"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["poly", "--strands", "3", "--braid", "-1 2"],
        vec!["fiber", "--strands", "3", "--braid", "-1 2", "--class", "1,2"],
        vec!["norm", "--strands", "3", "--braid", "-1 2", "--class", "0,1"],
        vec!["automaton", "--strands", "3"],
    ] {
        let a = stdout(&args);
        let b = stdout(&args);
        assert_eq!(a, b, "nondeterministic output for {args:?}");
    }
}

#[test]
fn json_outputs_parse() {
    for args in [
        vec!["poly", "--strands", "3", "--braid", "-1 2", "--json"],
        vec!["eval", "--strands", "3", "--braid", "-1 2", "--class", "0,1", "--json"],
        vec!["fiber", "--strands", "3", "--braid", "-1 2", "--class", "0,1", "--json"],
        vec!["norm", "--strands", "3", "--braid", "-1 2", "--class", "1,2", "--json"],
        vec!["certify", "--strands", "3", "--braid", "-1 2", "--json"],
        vec!["automaton", "--strands", "3", "--json"],
    ] {
        let out = stdout(&args);
        let value: serde_json::Value = serde_json::from_str(&out).expect("valid JSON");
        assert!(value.is_object());
    }
}

#[test]
fn parse_errors_exit_two() {
    let out = teich(&["poly", "--strands", "3", "--braid", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = teich(&["poly"]);
    assert_eq!(out.status.code(), Some(2));
    let out = teich(&["eval", "--strands", "3", "--braid", "-1 2", "--class", "0,1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certification_failure_exits_three() {
    let out = teich(&["certify", "--strands", "3", "--braid", "2 2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = teich(&["poly", "--strands", "3", "--braid", "2 2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = teich(&[
        "poly",
        "--strands",
        "3",
        "--braid",
        "2 2",
        "--override-certification",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cone_failure_exits_four() {
    let out = teich(&["eval", "--strands", "3", "--braid", "-1 2", "--class", "2,1"]);
    assert_eq!(out.status.code(), Some(4));
    let out = teich(&["fiber", "--strands", "3", "--braid", "-1 2", "--class", "0,-1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn automaton_dot_export() {
    let dir = std::env::temp_dir().join("teich-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b3.dot");
    let out = stdout(&["automaton", "--strands", "3", "--dot", path.to_str().unwrap()]);
    assert!(out.contains("1 vertices, 2 fold edges"));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("pi="));
}

#[test]
fn path_file_loop_matches_builtin() {
    let dir = std::env::temp_dir().join("teich-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("loop.json");
    std::fs::write(
        &path,
        r#"{"seed": "b3", "folds": [["a", "b"], ["b", "a"]]}"#,
    )
    .unwrap();
    let via_file = stdout(&["poly", "--path-file", path.to_str().unwrap()]);
    let builtin = stdout(&["poly", "--strands", "3", "--braid", "-1 2"]);
    assert_eq!(via_file, builtin);
}

#[test]
fn fiber_report_of_simplest_braid() {
    let out = stdout(&["fiber", "--strands", "3", "--braid", "-1 2", "--class", "0,1"]);
    assert!(out.contains("T1: 3 boundary component(s)"));
    assert!(out.contains("genus 0"));
    assert!(out.contains("audit passed"));
}

#[test]
fn slope_override_is_accepted() {
    let out = stdout(&[
        "fiber",
        "--strands",
        "3",
        "--braid",
        "-1 2",
        "--class",
        "0,1",
        "--slope-override",
        "T2=1/0",
    ]);
    assert!(out.contains("audit passed"));
}
