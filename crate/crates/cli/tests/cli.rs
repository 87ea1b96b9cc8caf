use std::path::Path;
use std::process::{Command, Output};

use commplex::{families, verify_generates, Graph, Procedure};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_commplex"))
        .args(args)
        .env_remove("COMMPLEX_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decide_writes_a_verifiable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("w.json");
    let o = run(&["decide", "--family", "ev", "--n", "3", "--complex", "path:0-1-2", "--witness-out", witness.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("generates: true"), "{text}");
    assert!(text.starts_with("schema: commplex-report/1\nengine: "));
    let p = Procedure::from_json(&std::fs::read_to_string(&witness).unwrap()).unwrap();
    assert!(verify_generates(&p, &families::ev(3).unwrap(), &Graph::path(3).to_complex()).unwrap());
}

#[test]
fn reports_are_deterministic() {
    let args = ["decide", "--family", "unique", "--n", "3", "--complex", "complete-graph", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["generates"], false);
    assert_eq!(v["certificate-data"]["kind"], "merged-triple");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["decide", "--family", "ev", "--complex", "path"]).status.code(), Some(1));
    assert_eq!(run(&["decide", "--bogus"]).status.code(), Some(1));
    assert_eq!(run(&["decide", "--family", "nope", "--n", "3", "--complex", "path"]).status.code(), Some(1));
    assert_eq!(run(&["decide", "--family", "ev", "--n", "3", "--complex", "fig2"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn limits_exit_two() {
    let o = run(&["decide", "--family", "eq", "--n", "4", "-k", "3", "--complex", "fig4", "--timeout-secs", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("verdict: undecided"));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["decide", "--family", "nc", "--n", "4", "--complex", "tree:0-1,1-2,1-3", "--cache-dir", cache];
    let first = run(&args);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = run(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let timed = run(&[&args[..], &["--timing"]].concat());
    assert!(stdout(&timed).contains("cached: true"));
}

#[test]
fn cnf_export_has_header() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.cnf");
    let o = run(&["decide", "--family", "ev", "--n", "3", "--complex", "path", "--export-cnf", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("c encoding one-hot/selector v1\nc query "));
    assert!(text.lines().any(|l| l.starts_with("p cnf ")));
}

#[test]
fn minimal_lists_the_cones() {
    let o = run(&["minimal", "--family", "unique", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("minimal: ")).count(), 4);
    assert!(text.contains("complete: true"));
}

#[test]
fn windows_of_the_example() {
    let text = stdout(&run(&["windows"]));
    assert!(text.contains("input-window: A: {a,b}"));
    assert!(text.contains("dual-window: d: {C}"));
    assert!(text.contains("comm-complex: {01,12}"));
}

#[test]
fn exports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k.dot");
    let o = run(&["export", "--object", "complex", "--n", "4", "--complex", "fig4", "--format", "dot", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("graph complex {"));
    let lang = dir.path().join("l.json");
    run(&["export", "--object", "language", "--family", "unique", "--n", "3", "--out", lang.to_str().unwrap()]);
    let o = run(&["decide", "--lang-file", lang.to_str().unwrap(), "--complex", "full"]);
    assert!(stdout(&o).contains("generates: true"));
    let dot = stdout(&run(&["export", "--object", "input-complex", "--n", "3", "--complex", "complete-graph"]));
    assert!(dot.contains("_"));
    assert!(Path::new(&out).exists());
}

#[test]
fn chromatic_agrees() {
    let text = stdout(&run(&["chromatic", "--family", "card-le", "--n", "3", "-k", "1", "--complex", "complete-graph"]));
    assert!(text.contains("generates: true"));
    assert!(text.contains("input-alphabet-size: 2"));
}

#[test]
fn verify_by_section() {
    let o = run(&["verify-paper", "--section", "2.1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("check: PASS 1 windows"), "{text}");
    assert!(text.contains("passed: 1/1"));
    assert_eq!(run(&["verify-paper", "--section", "9.9"]).status.code(), Some(1));
}
