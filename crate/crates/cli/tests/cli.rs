use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wm(dir: &Path, args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wm"));
    cmd.current_dir(dir).args(args);
    match threads {
        Some(t) => cmd.env("WM_THREADS", t),
        None => cmd.env_remove("WM_THREADS"),
    };
    cmd.output().expect("wm runs")
}

fn ok_json(dir: &Path, args: &[&str]) -> Value {
    let out = wm(dir, args, None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

#[test]
fn schur_matrix_is_solvable() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "schur.txt", "# x + y - z\n1 1 -1\n");
    write(dir.path(), "rhs.txt", "0\n");
    let r = ok_json(dir.path(), &["decide", "linear", "--matrix", "schur.txt", "--rhs", "rhs.txt", "--json"]);
    assert_eq!(r["schema"], "wm/1");
    assert_eq!(r["payload"]["decision"]["verdict"], "solvable");
    assert_eq!(r["payload"]["decision"]["reason"], Value::Null);
    assert_eq!(r["payload"]["verification"]["ok"], true);
    assert_eq!(r["input_digests"].as_object().unwrap().len(), 2);

    let r = ok_json(dir.path(), &["decide", "rado", "--matrix", "schur.txt"]);
    assert_eq!(r["payload"]["rado"]["regular"], true);
}

#[test]
fn not_solvable_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "m.txt", "2 -3\n");
    let out = wm(dir.path(), &["decide", "linear", "--matrix", "m.txt"], None);
    assert_eq!(out.status.code(), Some(0));
    let out = wm(dir.path(), &["decide", "linear", "--matrix", "m.txt", "--expect-witness"], None);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["payload"]["decision"]["reason"], "group-ratio-not-one");
}

#[test]
fn missing_witness_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let odds: String = std::iter::once("horizon 200".to_string())
        .chain((1..200).step_by(2).map(|n| n.to_string()))
        .collect::<Vec<_>>()
        .join("\n");
    write(dir.path(), "odds.txt", &odds);
    let out = wm(dir.path(), &["find", "schur", "--in", "odds.txt", "--expect-witness"], None);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["payload"]["found"], false);
    let r = ok_json(dir.path(), &["find", "mult-schur", "--in", "odds.txt", "--expect-witness"]);
    assert_eq!(r["payload"]["witness"]["elements"], serde_json::json!([3, 5, 15]));
}

#[test]
fn malformed_matrix_names_line() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.txt", "1 1 -1\n\n2 1/0 3\n");
    let out = wm(dir.path(), &["decide", "linear", "--matrix", "bad.txt"], None);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_and_resource_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(wm(dir.path(), &["frobnicate"], None).status.code(), Some(2));
    assert_eq!(wm(dir.path(), &["find", "ap", "--in", "nope.txt", "--k", "3"], None).status.code(), Some(2));
    let cols = vec!["1"; 21].join(" ");
    write(dir.path(), "wide.txt", &cols);
    assert_eq!(wm(dir.path(), &["decide", "rado", "--matrix", "wide.txt"], None).status.code(), Some(3));
    write(dir.path(), "small.txt", "horizon 10\n1\n2\n");
    let out = wm(
        dir.path(),
        &["find", "poly-system", "--in", "small.txt", "--poly", "0,0,1", "--poly", "0,1,1", "--zmax", "50"],
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    let out = wm(dir.path(), &["find", "schur", "--in", "small.txt"], Some("zero"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_round_trip_and_bad_magic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok_json(d, &["generate", "normal", "--n", "5000", "--seed", "9", "--out", "a.txt"]);
    ok_json(d, &["convert", "--in", "a.txt", "--to", "binary", "--out", "a.bin"]);
    ok_json(d, &["convert", "--in", "a.bin", "--from", "binary", "--to", "text", "--out", "b.txt"]);
    assert_eq!(std::fs::read(d.join("a.txt")).unwrap(), std::fs::read(d.join("b.txt")).unwrap());
    assert_eq!(&std::fs::read(d.join("a.bin")).unwrap()[..4], b"WMS1");

    write(d, "empty.txt", "# nothing here\nhorizon 7\n");
    ok_json(d, &["convert", "--in", "empty.txt", "--to", "binary", "--out", "e.bin"]);
    let r = ok_json(d, &["convert", "--in", "e.bin", "--to", "text", "--out", "e.txt"]);
    assert_eq!(r["payload"]["set"]["size"], 0);
    assert_eq!(std::fs::read_to_string(d.join("e.txt")).unwrap(), "horizon 7\n");

    let mut bad = std::fs::read(d.join("a.bin")).unwrap();
    bad[..4].copy_from_slice(b"WMS2");
    std::fs::write(d.join("bad.bin"), bad).unwrap();
    let out = wm(d, &["convert", "--in", "bad.bin", "--to", "text", "--out", "x.txt"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt"));
}

#[test]
fn reports_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "schur.txt", "1 1 -1\n");
    let scripts: Vec<Vec<&str>> = vec![
        vec!["generate", "normal", "--n", "200000", "--seed", "5", "--out", "n.bin", "--format", "binary"],
        vec!["generate", "sturmian", "--n", "100000", "--out", "s.txt"],
        vec!["generate", "periodic", "--n", "1000", "--mod", "5", "--residues", "1", "--out", "p.txt"],
        vec!["construct", "as-chain", "--abc", "2,3,1", "--seed", "4", "--n", "100000", "--out", "as.txt"],
        vec!["construct", "lambda-q", "--n", "100000", "--seed", "6", "--out", "lq.txt"],
        vec!["construct", "remove-intervals", "--in", "n.bin", "--p1", "0,1", "--p2", "0,0,0,1", "--out", "r.txt"],
        vec!["test", "normality", "--in", "n.bin", "--k", "2", "--max-shift", "6"],
        vec!["test", "ll", "--in", "s.txt", "--l", "3"],
        vec!["find", "schur", "--in", "n.bin"],
        vec!["find", "mult-square", "--in", "lq.txt"],
        vec!["find", "sum-square", "--in", "n.bin"],
        vec!["find", "diff-square", "--in", "n.bin"],
        vec!["find", "ap", "--in", "n.bin", "--k", "8"],
        vec!["find", "ip", "--in", "n.bin", "--m", "5"],
        vec!["find", "poly-system", "--in", "n.bin", "--poly", "0,0,1", "--poly", "0,1,1", "--zmax", "100"],
        vec!["find", "recurrence", "--s", "s.txt", "--e", "n.bin"],
        vec!["find", "schur", "--in", "s.txt"],
        vec!["decide", "linear", "--matrix", "schur.txt"],
        vec!["montecarlo", "--shifts", "1,2", "--n", "5000", "--trials", "10", "--seed", "3"],
    ];
    for args in &scripts {
        let mut full = vec!["--no-timing"];
        full.extend(args);
        let runs: Vec<Output> = ["1", "4", "4"].iter().map(|t| wm(d, &full, Some(t))).collect();
        for r in &runs {
            assert_eq!(r.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&r.stderr));
        }
        assert_eq!(runs[0].stdout, runs[1].stdout, "{args:?}");
        assert_eq!(runs[1].stdout, runs[2].stdout, "{args:?}");
    }
    let s: Value = serde_json::from_slice(&wm(d, &["find", "schur", "--in", "s.txt"], None).stdout).unwrap();
    assert_eq!(s["payload"]["found"], false);
}
