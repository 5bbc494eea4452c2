use std::path::Path;
use std::process::{Command, Output};

use percolab::chains::{simple_chain, starting_graph};
use percolab::graph::{emit_graph6, named::complete};

fn percolab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_percolab")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn oracle_reports_k4_on_six_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let o = percolab(dir.path(), &["oracle", "--pattern", "k4", "--n", "6", "--out", "m.json", "--csv", "m.csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "M=3");
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("m.json")).unwrap()).unwrap();
    assert_eq!(doc["schema"], "percolab.maxrun/1");
    assert_eq!(doc["report"]["max"], 3);
    assert!(std::fs::read_to_string(dir.path().join("m.csv")).unwrap().starts_with("tau,classes"));
}

#[test]
fn run_exit_codes_follow_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let c = simple_chain(&complete(4), &[0, 1, 2, 3], 6).unwrap();
    std::fs::write(dir.path().join("start.g6"), emit_graph6(&starting_graph(&c))).unwrap();
    let full = percolab(dir.path(), &["run", "--pattern", "k4", "--start", "start.g6", "--trace", "t.json", "--csv", "t.csv"]);
    assert_eq!(full.status.code(), Some(0));
    assert_eq!(stdout(&full).trim(), "tau=6 truncated=false");
    assert!(dir.path().join("t.json").is_file());
    let cut = percolab(dir.path(), &["run", "--pattern", "k4", "--start", "start.g6", "--max-rounds", "2"]);
    assert_eq!(cut.status.code(), Some(2));
}

#[test]
fn seeded_construction_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str| {
        vec![
            "construct", "--kind", "line", "--pattern", "k5", "--lines-n", "120", "--lines-l", "14", "--girth", "6", "--max-lines",
            "4", "--seed", "9", "--out", out,
        ]
    };
    assert!(percolab(dir.path(), &args("a.json")).status.success());
    assert!(percolab(dir.path(), &args("b.json")).status.success());
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());
    let v = percolab(dir.path(), &["verify", "--collection", "a.json", "--strength", "strong"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    let unseeded = percolab(dir.path(), &["construct", "--kind", "line", "--pattern", "k5", "--lines-n", "120", "--lines-l", "14", "--girth", "6"]);
    assert!(!unseeded.status.success());
}

#[test]
fn failed_verification_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    assert!(percolab(dir.path(), &["construct", "--kind", "simple", "--pattern", "k4", "--tau", "5", "--out", "c.json"]).status.success());
    let v = percolab(dir.path(), &["verify", "--chain", "c.json"]);
    assert_eq!(v.status.code(), Some(3));
}

#[test]
fn thread_override_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let ok = Command::new(env!("CARGO_BIN_EXE_percolab")).env("PERCOLAB_THREADS", "1").arg("selftest").output().unwrap();
    assert!(ok.status.success(), "{}", stdout(&ok));
    assert!(!stdout(&ok).contains("FAIL"));
    let bad = Command::new(env!("CARGO_BIN_EXE_percolab")).env("PERCOLAB_THREADS", "many").arg("selftest").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let missing = percolab(dir.path(), &["--json-errors", "classify", "--pattern", "nonsense"]);
    let err: serde_json::Value = serde_json::from_slice(&missing.stderr).unwrap();
    assert!(err["error"].as_str().unwrap().contains("nonsense"));
}

#[test]
fn construct_verifies_in_one_invocation() {
    let dir = tempfile::tempdir().unwrap();
    // The trichotomy check fails for this set and its witness is a note.
    let o = percolab(dir.path(), &["construct", "--kind", "bipdilation", "--pattern", "k3,3", "--p", "433", "--dilations", "1,8,17", "--verify", "proper", "--out", "b.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["schema"], "percolab.verify/1");
    let tri = doc["report"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "four_cycle_trichotomy").unwrap();
    assert_eq!(tri["holds"], false);
    assert_eq!(tri["witness"]["kind"], "note");
    assert!(dir.path().join("b.json").is_file());
}
