use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pointlike"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_owned()
}

#[test]
fn pointlikes_lists_the_constant_pair() {
    let o = run(&["pointlikes", &path("t2.sgp")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("{c1,c2}"), "{text}");
    assert!(text.contains("round 1: added {c1,c2}"));
}

#[test]
fn pointlikes_json() {
    let o = run(&["pointlikes", &path("t2.sgp"), "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["er_member"], Value::Bool(false));
    let maximal: Vec<Vec<u64>> = serde_json::from_value(v["maximal"].clone()).unwrap();
    assert_eq!(maximal, vec![vec![0], vec![1], vec![2, 3]]);
}

#[test]
fn verify_b2_exits_zero() {
    let o = run(&["verify", &path("b2.sgp")]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["er_member"], Value::Bool(true));
    assert_eq!(v["sizes"]["construct"], Value::from(5));
    assert!(v["flags"].as_object().unwrap().values().all(|f| f == &Value::Bool(true)));
}

#[test]
fn verify_output_is_byte_stable() {
    for f in ["t2.sgp", "b2.sgp", "c3.sgp"] {
        let a = run(&["verify", &path(f)]);
        let b = run(&["verify", &path(f)]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{f}");
    }
}

#[test]
fn automaton_json_has_init_first() {
    let o = run(&["automaton", &path("t2.sgp"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["states"][0]["init"], Value::Bool(true));
    assert_eq!(v["group"]["order"], Value::from(2));
    let transitions = v["transitions"].as_array().unwrap();
    assert_eq!(transitions.len(), v["states"].as_array().unwrap().len());
    assert!(transitions.iter().flat_map(|r| r.as_array().unwrap()).all(|q| q != &Value::from(0)));
}

#[test]
fn info_and_kernel() {
    let o = run(&["info", &path("t2.sgp")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("in ER (trivial construct): false"));
    let o = run(&["kernel", &path("t2.sgp")]);
    assert!(stdout(&o).contains("group kernel: {id,c1,c2}"));
}

#[test]
fn catalog_through_order_three() {
    let o = run(&["catalog", "--max-order", "3", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    let (passed, rest) = last.split_once('/').unwrap();
    let total = rest.split_whitespace().next().unwrap();
    assert_eq!(passed, total, "{last}");
    assert!(!text.contains("FAILED"));
}

#[test]
fn input_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sgp");
    std::fs::write(&bad, "2\n1 0\n0 0\n").unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not associative"));

    let missing = dir.path().join("missing.sgp");
    assert_eq!(run(&["info", missing.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn guard_breach_exits_two() {
    // a null semigroup of order 9 exceeds the default power-set guard
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("n9.sgp");
    let mut text = String::from("9\n");
    for _ in 0..9 {
        text.push_str(&["8"; 9].join(" "));
        text.push('\n');
    }
    std::fs::write(&file, text).unwrap();
    assert_eq!(run(&["verify", file.to_str().unwrap()]).status.code(), Some(2));
}
