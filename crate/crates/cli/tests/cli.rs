use std::process::{Command, Output};

use serde_json::Value;
use trispec::io::TriringFile;
use trispec::FiniteTriring;

fn trispec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trispec")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("trispec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn validate_exit_codes() {
    assert_eq!(trispec(&["validate", "--builtin", "TE(4,4)"]).status.code(), Some(0));
    assert_eq!(trispec(&["validate", "--builtin", "TQ-rational"]).status.code(), Some(0));

    let mut file = TriringFile::from_triring(&FiniteTriring::te(4, 4).unwrap());
    if let trispec::io::EvenSpec::Table { mul, .. } = &mut file.even {
        mul[2][3] = 0;
    }
    let bad = temp("bad.json");
    std::fs::write(&bad, serde_json::to_string(&file).unwrap()).unwrap();
    let out = trispec(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let rep = json(&out);
    let failing: Vec<&Value> = rep["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(failing.iter().all(|c| c["witness"].is_array()) && !failing.is_empty());

    let out = trispec(&["validate", temp("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(trispec(&["validate", "--builtin", "TE(4,3)"]).status.code(), Some(2));
    assert_eq!(trispec(&["validate"]).status.code(), Some(2));
}

#[test]
fn spectrum_and_topology() {
    let out = trispec(&["spec", "--builtin", "TE(6,3)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["points"].as_array().unwrap().len(), 3);
    assert_eq!(trispec(&["spec", "--builtin", "TQ-rational"]).status.code(), Some(2));

    let dot = trispec(&["topology", "--builtin", "TE(6,3)", "--format", "dot"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph") && text.contains("O2 -> E1"));
    let t = json(&trispec(&["topology", "--builtin", "TE(6,3)"]));
    assert!(t["closedSets"].as_array().unwrap().len() >= 4);
}

#[test]
fn localize_and_quotient() {
    let out = trispec(&["localize", "--builtin", "TE(4,4)", "--at-odd", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trinilpotent"));
    let out = trispec(&["localize", "--builtin", "TE(6,3)", "--at-prime", "2"]);
    assert_eq!(json(&out)["classCount"], 9);
    let out = trispec(&["localize", "--builtin", "TE(4,4)", "--at-even", "3"]);
    assert_eq!(json(&out)["classCount"], 16);
    assert_eq!(trispec(&["localize", "--builtin", "TE(4,4)", "--at-even", "2"]).status.code(), Some(1));
    assert_eq!(trispec(&["localize", "--builtin", "TE(4,4)", "--at-prime", "9"]).status.code(), Some(2));

    let out = trispec(&["quotient", "--builtin", "TE(4,4)", "--ideal", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn verification_verdicts() {
    let out = trispec(&["verify-all", "--builtin", "TE(4,4)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
    let out = trispec(&["verify-all", "--builtin", "TE(6,3)", "--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 8);
    assert!(text.contains("FAIL sheaf"));
    assert_eq!(trispec(&["verify-all", "--builtin", "TQ-rational"]).status.code(), Some(2));
    assert_eq!(trispec(&["sheaf-check", "--builtin", "TE(8,4)"]).status.code(), Some(0));
    let list = json(&trispec(&["corpus", "list"]));
    assert_eq!(list.as_array().unwrap().len(), 9);
}
