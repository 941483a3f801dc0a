use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sparse-f2"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn formula_path_three() {
    let v = json(&run(&["formula", "path", "--n", "3"], ""));
    assert_eq!(v["num"], "2799");
    assert_eq!(v["den"], "4096");
}

#[test]
fn oracle_on_json_file() {
    let dir = std::env::temp_dir().join(format!("sf2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p2.json");
    std::fs::write(&path, r#"{"n": 3, "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let v = json(&run(&["oracle", "--graph", path.to_str().unwrap()], ""));
    assert_eq!(
        (v["q"]["num"].as_str(), v["q"]["den"].as_str()),
        (Some("207"), Some("256"))
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn generated_system_feeds_other_commands() {
    let out = run(&["generate", "--family", "star:3", "--seed", "9"], "");
    let sys = String::from_utf8(out.stdout.clone()).unwrap();
    json(&out);
    let oracle = json(&run(&["oracle", "--graph", "-"], &sys));
    assert_eq!(oracle["q"]["num"], "2727");
    let cnf = run(&["export-dimacs", "--system", "-"], &sys);
    assert!(cnf.status.success());
    assert!(String::from_utf8(cnf.stdout)
        .unwrap()
        .starts_with("p cnf 4 "));
}

#[test]
fn deterministic_given_seed_and_threads() {
    let a = run(
        &[
            "mc",
            "--family",
            "cycle:4",
            "--trials",
            "20000",
            "--seed",
            "3",
            "--threads",
            "1",
        ],
        "",
    );
    let b = run(
        &[
            "mc",
            "--family",
            "cycle:4",
            "--trials",
            "20000",
            "--seed",
            "3",
            "--threads",
            "4",
        ],
        "",
    );
    assert_eq!(json(&a)["successes"], json(&b)["successes"]);
}

#[test]
fn conjecture_cycle_verifies() {
    let v = json(&run(
        &["conjecture-cycle", "--n", "3", "--verify-oracle"],
        "",
    ));
    assert_eq!(v["equal"], true);
}

#[test]
fn extremal_outputs() {
    let v = json(&run(&["extremal", "trees", "--n-edges", "5"], ""));
    assert_eq!(v["classes"], 6);
    assert_eq!(v["passed"], true);
    let csv = run(&["extremal", "forests", "--n-vertices", "6", "--csv"], "");
    assert!(csv.status.success());
    assert!(String::from_utf8(csv.stdout)
        .unwrap()
        .starts_with("n_vertices,m_edges"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"], "").status.code(), Some(2));
    assert_eq!(
        run(&["oracle", "--graph", "-"], "not a graph")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["oracle", "--family", "complete:8:3"], "")
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["extremal", "trees", "--n-edges", "11"], "")
            .status
            .code(),
        Some(3)
    );
    let usage = run(&["formula", "m2"], "");
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());
}
