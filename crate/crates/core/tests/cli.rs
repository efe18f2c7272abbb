//! End-to-end runs of the `verba` binary.

use std::process::{Command, Output};

fn verba(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_verba"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("VERBA_THREADS", t),
        None => cmd.env_remove("VERBA_THREADS"),
    };
    cmd.output().expect("binary runs")
}

#[test]
fn passing_experiment_exits_zero_with_json() {
    let out = verba(&["mp-powers"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["experiment"], "mp-powers");
    assert!(v.get("wall_clock_ms").is_none());
}

#[test]
fn timing_flag_adds_wall_clock() {
    let out = verba(&["mp-powers", "--timing"], None);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["wall_clock_ms"].is_u64());
}

#[test]
fn csv_has_a_row_per_assertion() {
    let json = verba(&["census", "--group", r#"{"type":"symmetric","n":3}"#], None);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let csv = verba(&["census", "--group", r#"{"type":"symmetric","n":3}"#, "--format", "csv"], None);
    assert_eq!(csv.status.code(), Some(0));
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("experiment,assertion,passed,detail\n"));
    assert_eq!(text.lines().count(), 1 + v["assertions"].as_array().unwrap().len());
}

#[test]
fn input_errors_exit_four() {
    assert_eq!(verba(&["no-such-experiment"], None).status.code(), Some(4));
    assert_eq!(verba(&["holt-perfect", "--q", "4"], None).status.code(), Some(4));
    assert_eq!(verba(&["holt-perfect", "--q", "x"], None).status.code(), Some(4));
    assert_eq!(verba(&["census", "--group", r#"{"type":"lie"}"#], None).status.code(), Some(4));
    assert_eq!(verba(&["mp-powers"], Some("zero")).status.code(), Some(4));
}

#[test]
fn resource_limits_exit_three() {
    assert_eq!(verba(&["nu-bound", "--m", "210"], None).status.code(), Some(3));
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = ["census", "--group", r#"{"type":"alternating","n":4}"#];
    let one = verba(&args, Some("1"));
    let eight = verba(&args, Some("8"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
}
