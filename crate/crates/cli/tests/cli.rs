use std::io::Write;
use std::process::{Command, Stdio};

fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_framelink"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn pipe(first: &[&str], second: &[&str]) -> (i32, String) {
    let (code, out, err) = run(first, "");
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = run(second, &out);
    (code, out)
}

#[test]
fn chain3_jones() {
    assert_eq!(pipe(&["gen", "chain3"], &["jones"]), (0, "t^{-2} + 2 + t^2\n".into()));
    let (_, a) = pipe(&["gen", "chain3"], &["jones", "--form", "a"]);
    assert_eq!(a, "A^-8 + 2 + A^8\n");
}

#[test]
fn p1_jones() {
    let (code, out) = pipe(&["gen", "pa", "1"], &["jones"]);
    assert_eq!(code, 0);
    assert_eq!(out, "-t^{-3/2} + t^{-1/2} - 2t^{1/2} + t^{3/2} - 2t^{5/2} + t^{7/2}\n");
    assert_eq!(pipe(&["gen", "whitehead"], &["jones"]).1, out);
}

#[test]
fn slide_report() {
    let doc = r#"{"links": [{"name": "k", "lk": [[0, 1], [1, 0]], "slopes": ["0/1", "1/1"]}]}"#;
    let (code, out, err) = run(&["slide", "--i", "1", "--j", "2", "--slope", "3/2", "--eps", "+1"], doc);
    assert_eq!(code, 0, "{err}");
    assert!(out.starts_with("x = 10\nnew slope of K1: 10/1\n"), "{out}");
    let (_, json, _) = run(&["--json", "slide", "--i", "1", "--j", "2", "--slope", "3/2", "--eps", "-1"], doc);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    // x = 2*3 - 2*2*1
    assert_eq!(v["x"], 2);
    assert_eq!(v["lk"][0][1], -2);
}

#[test]
fn slide_on_diagram_emits_document() {
    let (code, gen, _) = run(&["gen", "hopf", "+"], "");
    assert_eq!(code, 0);
    let (code, doc, err) = run(&["slide", "--i", "1", "--j", "2", "--slope", "3/2", "--doc"], &gen);
    assert_eq!(code, 0, "{err}");
    let (_, lk, _) = run(&["lk"], &doc);
    assert_eq!(lk, "0 4\n4 0\n");
    let mut before: serde_json::Value = serde_json::from_str(&gen).unwrap();
    before["links"][0]["slopes"] = serde_json::json!(["0/1", "3/2"]);
    let (_, h1_before, _) = run(&["h1"], &before.to_string());
    let (_, h1_after, _) = run(&["h1"], &doc);
    // presentation [[0, 1], [2, 3]] has determinant -2
    assert_eq!(h1_before, "Z/2\n");
    assert_eq!(h1_after, h1_before);
}

#[test]
fn homology_and_smith() {
    let doc = r#"{"links": [{"name": "h", "lk": [[0, 1], [1, 0]], "slopes": ["2/1", "2/1"]}]}"#;
    assert_eq!(run(&["h1"], doc).1, "Z/3\n");
    let (code, out, _) = run(&["snf"], "[[2, 0], [0, 3]]");
    assert_eq!(code, 0);
    assert!(out.starts_with("D =\n1 0\n0 6\n"), "{out}");
    let (_, json, _) = run(&["--json", "snf"], "[[2, 4], [6, 8]]");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["d"], serde_json::json!([[2, 0], [0, 4]]));
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["jones"], "X[1,4,2,3]");
    assert_eq!(code, 1);
    assert!(err.contains("edge"), "{err}");
    assert_eq!(run(&["validate"], "X[1,4,2").0, 1);
    assert_eq!(run(&["gen", "pa", "0"], "").0, 1);
    let (code, gen, _) = run(&["gen", "borromean"], "");
    assert_eq!(code, 0);
    assert_eq!(run(&["--budget", "4", "jones"], &gen).0, 2);
    assert_eq!(run(&["verify-paper", "--only", "12"], "").0, 1);
}

#[test]
fn validate_and_lk() {
    let (code, out, _) = run(&["validate"], "X[1,4,2,3] X[3,2,4,1]");
    assert_eq!(code, 0);
    assert_eq!(out, "input: ok, 2 components, 2 crossings\n");
    assert_eq!(run(&["validate"], "O").1, "input: ok, 1 components, 0 crossings\n");
    assert_eq!(pipe(&["gen", "chain3"], &["lk"]).1, "0 1 0\n1 0 -1\n0 -1 0\n");
}

#[test]
fn simplify_removes_curls() {
    let (code, out, _) = run(&["simplify", "--pd"], "X[1,1,2,2]");
    assert_eq!(code, 0);
    assert_eq!(out, "O\n");
}

#[test]
fn verify_single_criterion() {
    let (code, out, _) = run(&["verify-paper", "--only", "3"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("[PASS] 3 "), "{out}");
    let (_, json, _) = run(&["--json", "verify-paper", "--only", "8"], "");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["status"], "pass");
}
