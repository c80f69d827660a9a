use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("data");
    p.push(format!("{name}.qv"));
    p.to_string_lossy().into_owned()
}

fn nquiver(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nquiver"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn a4_dual(dir: &tempfile::TempDir) -> String {
    let o = nquiver(&["qdual", &data("a4_auslander"), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let path = dir.path().join("a4dual.qv");
    std::fs::write(&path, &o.stdout).unwrap();
    path.to_string_lossy().into_owned()
}

fn dot_nodes(dot: &str) -> usize {
    dot.lines()
        .filter(|l| l.trim_start().starts_with('v') && !l.contains("->") && l.contains("[label="))
        .count()
}

fn dot_edges(dot: &str) -> usize {
    dot.lines()
        .filter(|l| l.contains("->") && l.contains("[label="))
        .count()
}

#[test]
fn zq_window_dot() {
    let dir = tempfile::tempdir().unwrap();
    let f = a4_dual(&dir);
    let o = nquiver(&["zq", &f, "--n", "2", "--slices", "0..2", "--dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot_nodes(&dot), 30);
    assert_eq!(dot.matches("rank=same").count(), 3);
    let wrong = nquiver(&["zq", &f, "--n", "3", "--slices", "0..2"]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn returning_arrows_are_styled() {
    let dir = tempfile::tempdir().unwrap();
    let f = a4_dual(&dir);
    let dot = stdout(&nquiver(&["trivext", &f, "--dot"]));
    assert_eq!(dot_nodes(&dot), 10);
    assert_eq!(dot_edges(&dot), 18);
    assert_eq!(dot.matches("class=\"returning\"").count(), 6);
}

#[test]
fn compare_kronecker() {
    let o = nquiver(&["compare", &data("kronecker"), "--n", "1", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("isomorphic"));
}

#[test]
fn output_is_byte_stable() {
    let a = nquiver(&["--json", "closure", &data("a3"), "--n", "1"]);
    let b = nquiver(&["--json", "closure", &data("a3"), "--n", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["members"].as_array().unwrap().len(), 6);
    assert_eq!(v["terminated"], true);
}

#[test]
fn verification_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = a4_dual(&dir);
    let w = nquiver(&["zq", &f, "--slices", "-1..1"]);
    let wf = dir.path().join("w.qv");
    std::fs::write(&wf, &w.stdout).unwrap();
    let wf = wf.to_string_lossy().into_owned();
    let all = nquiver(&["nass", &wf, "--vertex", "(1,1)[-1]"]);
    assert_eq!(all.status.code(), Some(1), "{}", stdout(&all));
    let mature = nquiver(&[
        "nass",
        &wf,
        "--vertex",
        "(1,1)[-1]",
        "--test-set",
        "mature:3",
    ]);
    assert_eq!(mature.status.code(), Some(0), "{}", stdout(&mature));
    let k = nquiver(&["koszul", &wf, "--vertex", "(1,1)[-1]"]);
    assert_eq!(k.status.code(), Some(0));
    assert_eq!(stdout(&k).lines().count(), 4);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qv");
    std::fs::write(&bad, "quiver B\nvertices: 1\narrows:\n  a: 1 -> 7\n").unwrap();
    let o = nquiver(&["parse", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains('7'));
    assert_eq!(nquiver(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        nquiver(&["--field", "fp:9", "parse", &data("a3")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ktype_reports() {
    let o = nquiver(&["ktype", &data("a3_rad2"), "--trivext"]);
    assert!(stdout(&o).contains("q = 2"));
    let o = nquiver(&["--cutoff", "6", "ktype", &data("kronecker"), "--trivext"]);
    assert!(
        stdout(&o).contains("purity verified to step 6"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn empty_quiver_dot() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("e.qv");
    std::fs::write(&f, "quiver E\nvertices:\narrows:\nrelations:\n").unwrap();
    let o = nquiver(&["--dot", "parse", f.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o), "digraph \"E\" {\n  rankdir=LR;\n}\n");
}
