use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flatlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatlab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn build(dir: &Path, name: &str, extra: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut args = vec!["build"];
    args.extend_from_slice(extra);
    args.extend_from_slice(&["-o", &path]);
    let out = flatlab(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn torus_twist_is_a_member() {
    let dir = tempfile::tempdir().unwrap();
    let t = build(dir.path(), "t.json", &["--preset", "square-torus"]);
    let out = flatlab(&["veech", &t, "--matrix", "1,1;0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "member");
}

#[test]
fn stack_truncation_area() {
    let dir = tempfile::tempdir().unwrap();
    let s = build(dir.path(), "s.json", &["--stack", "h=n^-1", "w=n^-1", "--levels", "5"]);
    let out = flatlab(&["analyze", &s]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["area_value"]["value"]["value"], "5269/3600");
}

#[test]
fn lemma_sweep_passes_on_the_l() {
    let out = flatlab(&["verify-lemmas", "--preset", "l-surface", "--max-slope", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(flatlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(flatlab(&["verify-lemmas", "--preset", "no-such-surface"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let t = build(dir.path(), "t.json", &["--preset", "square-torus"]);
    assert_eq!(flatlab(&["veech", &t, "--matrix", "1,2"]).status.code(), Some(2));
    assert_eq!(flatlab(&["veech", "/nonexistent.json", "--matrix", "1,0;0,1"]).status.code(), Some(2));
}

#[test]
fn saddles_csv() {
    let dir = tempfile::tempdir().unwrap();
    let t = build(dir.path(), "t.json", &["--preset", "square-torus"]);
    let out = flatlab(&["saddles", &t, "--length", "3/2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("hol_x,hol_y,norm_sq,start_class,end_class"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.contains(&"1,1,2,0,0"));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let l = build(dir.path(), "l.json", &["--preset", "l-surface"]);
    let runs: Vec<Vec<u8>> = ["1", "4"]
        .iter()
        .map(|jobs| flatlab(&["--jobs", jobs, "vset", &l, "--area", "1", "--length", "3", "--gap"]).stdout)
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
}
