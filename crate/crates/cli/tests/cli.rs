use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scheme-minor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write_graph(dir: &Path, name: &str, n: usize, edges: &[(usize, usize)]) -> PathBuf {
    let edges: Vec<[usize; 2]> = edges.iter().map(|&(u, v)| [u, v]).collect();
    let path = dir.join(name);
    std::fs::write(&path, serde_json::json!({"n": n, "edges": edges}).to_string()).unwrap();
    path
}

fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is pure JSON")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn classify_k7_is_chromatic_negative() {
    let dir = TempDir::new().unwrap();
    let k7 = write_graph(dir.path(), "k7.json", 7, &complete(7));
    let out = run(&["classify", "--graph", p(&k7)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "not_contractible");
    assert_eq!(v["rule"], "THM_CHROMATIC");
    assert_eq!(v["witness"]["chromatic_number"], 7);
}

#[test]
fn mprime_decide_theta_is_negative() {
    let dir = TempDir::new().unwrap();
    // Branch vertices 0 and 1: a direct edge and paths with 2 and 3 internal vertices.
    let edges = [(0, 1), (0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 6), (6, 1)];
    let t = write_graph(dir.path(), "theta.json", 7, &edges);
    let out = run(&["mprime", "decide", "--graph", p(&t)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["contractible"], false);
    assert_eq!(v["certificate"]["kind"], "negative_exhaustive");
}

#[test]
fn minor_find_reports_none_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let host = write_graph(dir.path(), "p4.json", 4, &[(0, 1), (1, 2), (2, 3)]);
    let pat = write_graph(dir.path(), "k3.json", 3, &complete(3));
    let out = run(&["minor", "find", "--host", p(&host), "--pattern", p(&pat)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"], "none");
}

#[test]
fn rooted_minor_find_returns_a_model() {
    let dir = TempDir::new().unwrap();
    let host = write_graph(dir.path(), "c5.json", 5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
    let pat = write_graph(dir.path(), "k3.json", 3, &complete(3));
    let out = run(&[
        "minor", "find", "--host", p(&host), "--pattern", p(&pat), "--rooted", "--roots", "0,2,3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], "found");
    assert_eq!(v["model"]["roots"]["1"], 2);
}

#[test]
fn roots_without_rooted_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(dir.path(), "k3.json", 3, &complete(3));
    let out = run(&["minor", "find", "--host", p(&g), "--pattern", p(&g), "--roots", "0,1,2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--graph", "x", "--bogus"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": 2, "edges": [[0, 0]]}"#).unwrap();
    let out = run(&["classify", "--graph", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
    let missing = run(&["classify", "--graph", p(&dir.path().join("missing"))]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn capacity_errors_exit_three() {
    assert_eq!(run(&["atlas", "verify", "--max-n", "8"]).status.code(), Some(3));
    let dir = TempDir::new().unwrap();
    let g = write_graph(dir.path(), "k5.json", 5, &complete(5));
    let out = run(&["--max-host-vertices", "3", "minor", "find", "--host", p(&g), "--pattern", p(&g)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn graph6_input_is_accepted() {
    let dir = TempDir::new().unwrap();
    // K4 in graph6.
    let g = dir.path().join("k4.g6");
    std::fs::write(&g, "C~\n").unwrap();
    let out = run(&["classify", "--graph", p(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "contractible");
}

#[test]
fn built_scheme_validates_and_normalizes() {
    let dir = TempDir::new().unwrap();
    let c4 = write_graph(dir.path(), "c4.json", 4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
    let built = json(&run(&["mprime", "build", "--graph", p(&c4)]));
    assert_eq!(built["graph"]["n"], 8);
    let scheme = dir.path().join("scheme.json");
    std::fs::write(&scheme, built["scheme"].to_string()).unwrap();
    let out = run(&["scheme", "validate", "--scheme", p(&scheme)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
    let out = run(&["scheme", "normalize", "--scheme", p(&scheme)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["trace"].is_array());
}

#[test]
fn invalid_scheme_is_a_negative_answer() {
    let dir = TempDir::new().unwrap();
    let scheme = dir.path().join("s.json");
    // The path for 0-1 jumps along a non-edge.
    let text = r#"{"pattern": {"n": 2, "edges": [[0, 1]]},
        "host": {"n": 3, "edges": [[0, 1], [1, 2]]},
        "roots": {"0": 0, "1": 2}, "paths": {"0-1": [0, 2]}}"#;
    std::fs::write(&scheme, text).unwrap();
    let out = run(&["scheme", "validate", "--scheme", p(&scheme)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["clause"], "path-is-host-path");
}

#[test]
fn mprime_witness_for_a_path() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(dir.path(), "p4.json", 4, &[(0, 1), (1, 2), (2, 3)]);
    let out = run(&["mprime", "witness", "--graph", p(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], "found");
    assert_eq!(v["model"]["roots"]["3"], 3);
    let out = run(&["mprime", "witness", "--graph", p(&g), "--stable", "0,3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn atlas_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let first = bin()
        .args(["atlas", "verify", "--max-n", "5", "--out", p(&a)])
        .env("SCHEME_MINOR_THREADS", "4")
        .output()
        .unwrap();
    let second = bin()
        .args(["atlas", "verify", "--max-n", "5", "--out", p(&b)])
        .env("SCHEME_MINOR_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert_eq!(text.lines().count(), 31);
    assert_eq!(json(&first)["graphs"], 31);
}

#[test]
fn text_format_is_plain() {
    let dir = TempDir::new().unwrap();
    let k7 = write_graph(dir.path(), "k7.json", 7, &complete(7));
    let out = run(&["classify", "--graph", p(&k7), "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("not_contractible by THM_CHROMATIC"));
}
