use std::path::Path;
use std::process::{Command, Output};

use sct_core::SCTheory;

fn sct(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sct"))
        .args(args)
        .env_remove("SCT_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn enumerate_c4_as_json() {
    let out = sct(&["enumerate", "--n", "4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let theories: Vec<SCTheory> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(theories.len(), 3);
    assert_eq!(
        stdout(&out),
        "[{\"n\":4,\"blocks\":[[0],[1],[2],[3]]},{\"n\":4,\"blocks\":[[0],[1,3],[2]]},{\"n\":4,\"blocks\":[[0],[1,2,3]]}]\n"
    );
}

#[test]
fn enumerate_text_lists_one_theory_per_line() {
    let out = sct(&["enumerate", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 7);
    assert!(text.starts_with("0: {0} {1} {2} {3} {4} {5}\n"));
    assert!(text.ends_with("6: {0} {1,2,3,4,5}\n"));
}

#[test]
fn check_c8_reports_false_with_witness() {
    let out = sct(&["check", "--n", "8", "--property", "usm"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("false"));
    assert!(lines.next().unwrap().starts_with("witness: "));
    let out = sct(&["check", "--n", "7", "--property", "modular"]);
    assert_eq!(stdout(&out), "true\n");
    let out = sct(&[
        "check",
        "--n",
        "15",
        "--property",
        "lsm",
        "--format",
        "json",
    ]);
    assert_eq!(
        stdout(&out),
        "{\"property\":\"lower\",\"holds\":true,\"witness\":null}\n"
    );
}

#[test]
fn verify_paper_passes_to_15() {
    let out = sct(&["verify-paper", "--max-n", "15"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.lines().last().unwrap().ends_with(" 0 failed"),
        "{text}"
    );
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_paper_json_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = sct(&[
        "verify-paper",
        "--max-n",
        "6",
        "--format",
        "json",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let claims = report.as_array().unwrap();
    assert!(claims.iter().all(|c| c["pass"] == true));
    assert!(claims.iter().any(|c| c["id"] == "thm.lsm[n=6]"));
}

#[test]
fn constructions() {
    let out = sct(&["construct", "--n", "9", "aut", "--gens", "8"]);
    assert_eq!(
        stdout(&out),
        "{\"n\":9,\"blocks\":[[0],[1,8],[2,7],[3,6],[4,5]]}\n"
    );
    let out = sct(&["construct", "--n", "9", "inversion", "--format", "text"]);
    assert_eq!(stdout(&out), "{0} {1,8} {2,7} {3,6} {4,5}\n");
    let out = sct(&["construct", "--n", "5", "min", "--format", "text"]);
    assert_eq!(stdout(&out), "{0} {1} {2} {3} {4}\n");
    let out = sct(&["construct", "--n", "5", "max"]);
    assert_eq!(stdout(&out), "{\"n\":5,\"blocks\":[[0],[1,2,3,4]]}\n");

    let dir = tempfile::tempdir().unwrap();
    let z2 = write(dir.path(), "z2.json", r#"{"n":2,"blocks":[[0],[1]]}"#);
    let z3 = write(dir.path(), "z3.json", r#"{"n":3,"blocks":[[0],[1,2]]}"#);
    let out = sct(&["construct", "--n", "6", "direct", "--a", &z3, "--b", &z2]);
    assert_eq!(stdout(&out), "{\"n\":6,\"blocks\":[[0],[1,5],[2,4],[3]]}\n");
    let out = sct(&[
        "construct",
        "--n",
        "6",
        "star",
        "--subgroup",
        "2",
        "--inner",
        &z2,
        "--outer",
        &z3,
    ]);
    assert_eq!(stdout(&out), "{\"n\":6,\"blocks\":[[0],[1,2,4,5],[3]]}\n");
}

#[test]
fn hasse_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.dot");
    let out = sct(&["hasse", "--n", "4", "--dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "digraph sup_4 {\n  rankdir=BT;\n  n0 [label=\"0:4\"];\n  n1 [label=\"1:3\"];\n  n2 [label=\"2:2\"];\n  n0 -> n1;\n  n1 -> n2;\n}\n"
    );
    let out = sct(&["hasse", "--n", "4", "--dot", "-"]);
    assert!(stdout(&out).starts_with("digraph sup_4 {"));
}

#[test]
fn exit_codes() {
    assert_eq!(sct(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(sct(&["enumerate"]).status.code(), Some(64));
    assert_eq!(sct(&["enumerate", "--n", "0"]).status.code(), Some(64));
    assert_eq!(sct(&["enumerate", "--n", "65"]).status.code(), Some(64));
    assert_eq!(
        sct(&["check", "--n", "8", "--property", "both"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        sct(&["construct", "--n", "8", "aut", "--gens", "2"])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(sct(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"n":4,"blocks":[[0],[1],[2,3]]}"#,
    );
    let z2 = write(dir.path(), "z2.json", r#"{"n":2,"blocks":[[0],[1]]}"#);
    let out = sct(&[
        "construct",
        "--n",
        "8",
        "star",
        "--subgroup",
        "4",
        "--inner",
        &bad,
        "--outer",
        &z2,
    ]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a supercharacter theory"));
    let out = sct(&["construct", "--n", "8", "direct", "--a", &z2, "--b", &z2]);
    assert_eq!(out.status.code(), Some(64));

    let out = sct(&["--max-nodes", "10", "enumerate", "--n", "36"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn output_is_stable_with_cold_and_warm_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let plain = sct(&["enumerate", "--n", "24", "--format", "json"]);
    let cold = sct(&[
        "enumerate",
        "--n",
        "24",
        "--format",
        "json",
        "--cache",
        cache,
    ]);
    let warm = sct(&[
        "enumerate",
        "--n",
        "24",
        "--format",
        "json",
        "--cache",
        cache,
    ]);
    assert!(dir.path().join("sup-24.json").exists());
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(cold.stdout, warm.stdout);

    let via_env = Command::new(env!("CARGO_BIN_EXE_sct"))
        .args(["enumerate", "--n", "12"])
        .env("SCT_CACHE", cache)
        .output()
        .unwrap();
    assert_eq!(via_env.status.code(), Some(0));
    assert!(dir.path().join("sup-12.json").exists());
}
