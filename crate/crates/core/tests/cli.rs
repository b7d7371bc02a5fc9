use std::fs;
use std::process::{Command, Output};

fn lashlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lashlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = lashlab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn slope_subcommand() {
    let out = stdout(&["slope", "7/3"]);
    assert!(out.contains("alternating: [0, 2, -3]\n"), "{out}");
    assert!(out.contains("montesinos_lambda: -7/10\n"));
    assert!(stdout(&["slope", "--cf=-2,3,1"]).contains("slope: 2/5\n"));
    assert!(stdout(&["slope", "--twist", "2,-1,3"]).contains("slope: -4/11\n"));
    assert!(stdout(&["slope", "inf"]).contains("slope: 1/0\n"));
}

#[test]
fn profile_and_threshold() {
    let out = stdout(&["profile", "--K", "1,0", "--L", "0,1", "--n", "3"]);
    assert!(out.contains("mu: 3\nlambda: 1\nnu: 4\n"), "{out}");
    assert!(stdout(&["threshold", "--K", "2,1", "--L", "1,1"]).contains("threshold: 0\n"));
    let out = lashlab(&["profile", "--K", "1,0", "--L", "1,0", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weights_subcommand() {
    let out = stdout(&["weights", "--a", "1,1,0", "--m", "1", "--p", "1", "--q", "1"]);
    assert!(out.contains("x: 0,15,15,15\ny: 0,0,12,12\n"), "{out}");
    assert!(out.contains("lambda_alt: 272\n"));
    assert!(out.contains("strand_model: 12\n"));
}

#[test]
fn surgery_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.txt");
    let p = path.to_str().unwrap();
    let out = stdout(&[
        "surgery", "--a1", "1", "--a2", "1", "--a3", "1", "--m", "1", "--b1", "1", "--export", p,
    ]);
    assert!(out.contains("h1_order: 1156\n"), "{out}");
    let first = fs::read(&path).unwrap();
    let again = stdout(&["surgery", "--file", p]);
    assert!(again.contains("h1_group: Z/1156\n"));
    assert!(again.contains("components: 16\n"));
    assert!(stdout(&["surgery", "--r=-3"]).contains("h1_order: 1153\n"));

    stdout(&[
        "export", "--a1", "1", "--a2", "1", "--a3", "1", "--m", "1", "--b1", "1", "--out", p,
    ]);
    assert_eq!(fs::read(&path).unwrap(), first);

    let bad = lashlab(&["export", "--out", "/nonexistent-dir/k.txt"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("/nonexistent-dir/k.txt"));
}

#[test]
fn decompose_subcommand() {
    let out = stdout(&["decompose", "--xi", "1 -2 1", "--aprime", "2,1,3"]);
    assert!(out.contains("case: LeadingPositive\n"), "{out}");
    assert!(out.contains("valid: true\n"));
    let bad = lashlab(&["decompose", "--xi", "2 -1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn row_and_table() {
    let out = stdout(&["row", "--a3", "0", "--a2", "1", "--a1", "1", "--m", "1", "--b1", "1"]);
    assert!(
        out.contains("lambda_alt: 272\n") && out.contains("genus_status: mismatch\n"),
        "{out}"
    );
    let tsv = stdout(&[
        "row", "--s1xs2", "--a3", "0", "--a2", "1", "--a1", "0", "--format", "tsv",
    ]);
    assert!(tsv.lines().nth(1).unwrap().contains("\tZ/256\t"));

    let table = stdout(&["table", "--grid", "table2"]);
    assert_eq!(table.lines().count(), 7);
    assert_eq!(table, stdout(&["table", "--grid", "table2"]));
    let grid = stdout(&["table", "--grid", "a1=0..1;b1=1,2", "--format", "kv"]);
    assert_eq!(grid.matches("family: ").count(), 4);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.tsv");
    stdout(&["table", "--out", path.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&path).unwrap(), stdout(&["table"]));
}

#[test]
fn check_subcommand() {
    let out = lashlab(&["check", "--verbose"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("fixtures: "));
    assert!(text.contains("summary: 9/9 fixtures passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lashlab(&["bogus"]).status.code(), Some(2));
    assert_eq!(lashlab(&["table", "--grid", "z=1"]).status.code(), Some(2));
    assert_eq!(lashlab(&["slope", "0/0"]).status.code(), Some(2));
    assert_eq!(
        lashlab(&["weights", "--a", "1", "--m", "0", "--p", "2", "--q", "4"])
            .status
            .code(),
        Some(2)
    );
}
