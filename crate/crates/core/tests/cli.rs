use std::path::Path;
use std::process::{Command, Output};

use disect::parse_digraph;
use tempfile::TempDir;

fn disect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disect")).args(args).output().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_extremal_writes_the_expected_counts() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("ex.txt");
    let layout = dir.path().join("layout.json");
    let out = disect(&["generate", "extremal", "--d", "1", "--k", "30", "--out", path_str(&graph), "--layout", path_str(&layout)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let d = parse_digraph(&std::fs::read_to_string(&graph).unwrap()).unwrap();
    assert_eq!((d.n(), d.m()), (95, 190));
    let layout: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&layout).unwrap()).unwrap();
    assert_eq!(layout["apex"], 90);
    assert_eq!(layout["copies"].as_array().unwrap().len(), 30);
}

#[test]
fn generate_writes_to_stdout_without_out() {
    let out = disect(&["generate", "eulerian", "--t", "5"]);
    assert!(out.status.success());
    let d = parse_digraph(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!((d.n(), d.m()), (5, 10));

    let out = disect(&["generate", "random", "--n", "20", "--d", "2", "--p", "0.1", "--seed", "4"]);
    assert!(out.status.success());
    let d = parse_digraph(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(d.min_semidegree() >= 2);
}

#[test]
fn partition_json_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    assert!(disect(&["generate", "extremal", "--d", "2", "--k", "5", "--out", path_str(&graph)]).status.success());
    let run = |threads: &str| {
        let out = disect(&["partition", path_str(&graph), "--seed", "3", "--trials", "3000", "--threads", threads]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let first = run("1");
    assert_eq!(first, run("1"));
    assert_eq!(first, run("2"));
    let doc: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(doc["input"]["n"], 32);
    assert_eq!(doc["rng"]["seed"], 3);
    assert_eq!(doc["rng"]["trials"], 3000);
    let stats = &doc["stats"];
    assert_eq!(stats["minDir"], stats["e12"].as_u64().unwrap().min(stats["e21"].as_u64().unwrap()));
}

#[test]
fn partition_json_flag_writes_a_file() {
    let dir = TempDir::new().unwrap();
    let graph = dir.path().join("g.txt");
    let json = dir.path().join("r.json");
    assert!(disect(&["generate", "eulerian", "--t", "7", "--out", path_str(&graph)]).status.success());
    let out = disect(&["partition", path_str(&graph), "--trials", "500", "--json", path_str(&json)]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("minDir"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["mode"], "pipeline");
}

#[test]
fn verify_respects_the_oracle_guard() {
    let dir = TempDir::new().unwrap();
    let big = dir.path().join("big.txt");
    assert!(disect(&["generate", "extremal", "--d", "1", "--k", "30", "--out", path_str(&big)]).status.success());
    let out = disect(&["verify", path_str(&big), "--oracle-max-n", "12"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the oracle guard"));

    let small = dir.path().join("small.txt");
    assert!(disect(&["generate", "eulerian", "--t", "7", "--out", path_str(&small)]).status.success());
    let out = disect(&["verify", path_str(&small), "--trials", "2000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verify: ok"));
}

#[test]
fn bench_emits_csv() {
    let out = disect(&["bench", "--d", "1", "--k", "5,10", "--trials", "2000", "--seed", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,k,n,m,minDir,ratio,bound,margin");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,5,20,40,"));
}

#[test]
fn bad_input_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3 2\n0 1\n1 1\n").unwrap();
    let out = disect(&["partition", path_str(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(disect(&["partition", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(disect(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(disect(&["--help"]).status.code(), Some(0));
    let out = disect(&["partition", path_str(&bad), "--epsilon", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn library_entry_point_captures_output() {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = disect::cli::run(["disect", "generate", "eulerian", "--t", "3"], &mut stdout, &mut stderr);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(stdout).unwrap(), "3 3\n0 1\n1 2\n2 0\n");
}
