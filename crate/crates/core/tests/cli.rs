use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mod18root"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn golden_traces() {
    let o = run(&["root", "--root", "2", "--trace", "1429822969"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("square_trace.txt"));

    let o = run(&["root", "--root", "2", "--trace", "--all-branches", "1429822969"]);
    assert_eq!(stdout(&o), golden("square_trace_all.txt"));

    let o = run(&["root", "--root", "3", "--trace", "6177847762549"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("cube_trace.txt"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["root", "1429822969"]).status.code(), Some(0));
    assert_eq!(run(&["root", "1429822970"]).status.code(), Some(1));
    assert_eq!(run(&["root", "--root", "3", "1429822969"]).status.code(), Some(1));
    assert_eq!(run(&["root", "12x"]).status.code(), Some(2));
    assert_eq!(run(&["root", ""]).status.code(), Some(2));
    assert_eq!(run(&["root", "0"]).status.code(), Some(2));
    assert_eq!(run(&["root", "--root", "4", "16"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "12"]).status.code(), Some(0));
    // filter strips 2s and 3s first; the core of 12 is 1.
    assert_eq!(stdout(&run(&["filter", "12"])), "12: SquareCandidate\n");
    // An error anywhere in a batch wins, but every value is still processed.
    let o = run(&["root", "25", "bad", "26"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).matches("input:").count(), 2);
    assert_eq!(run(&["root", "25", "26"]).status.code(), Some(1));
}

#[test]
fn stdin_streaming() {
    let o = run_stdin(&["filter", "-"], "35\n1429822969\n\n41\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "35: TwinProductCandidate\n1429822969: SquareCandidate\n41: Neither\n");

    let o = run_stdin(&["root", "--format", "json", "-"], "361\n362\n");
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["root"], "19");
    assert_eq!(lines[1]["verdict"], "non-square");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn root_json_fields() {
    let o = run(&["root", "--format", "json", "--all-branches", "--trace", "1429822969"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "square");
    assert_eq!(v["root"], "37813");
    assert_eq!(v["degree"], 2);
    assert_eq!(v["class"], 7);
    assert_eq!(v["candidates"], serde_json::json!([5, 13]));
    assert_eq!(v["normalization"]["core"], "1429822969");
    let branches = v["branches"].as_array().unwrap();
    assert_eq!(branches.len(), 2);
    assert_eq!(branches[0]["outcome"], "fail");
    assert_eq!(branches[0]["residual"], "-21236");
    assert_eq!(branches[1]["n0"], "39717300");
    assert_eq!(branches[1]["rows"].as_array().unwrap().len(), 4);
    assert!(v.get("elapsed_us").is_none());

    let o = run(&["root", "--format", "json", "--timing", "1429822969"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["elapsed_us"].is_u64());
}

#[test]
fn classify_output() {
    let o = run(&["classify", "--format", "json", "512346251"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], 11);
    assert_eq!(v["dr"], 2);
    let o = run(&["classify", "1429822969"]);
    let text = stdout(&o);
    assert!(text.contains("class: [7]"), "{text}");
}

#[test]
fn bench_is_deterministic() {
    let args = ["bench", "--bits", "32,64", "--count", "100", "--seed", "7", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let records: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|v| v.get("summary").is_none())
        .collect();
    assert_eq!(records.len(), 200);
    assert!(records.iter().all(|r| r["oracle_agrees"] == true));

    let other = run(&["bench", "--bits", "32,64", "--count", "100", "--seed", "8", "--format", "json"]);
    assert_ne!(other.stdout, a.stdout);
}

#[test]
fn bench_handles_large_inputs() {
    let o = run(&["bench", "--bits", "2048", "--count", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("oracle_mismatches=0"), "{text}");
}
