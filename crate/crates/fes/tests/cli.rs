//! End-to-end checks of the `fes` binary: JSON round trips, exit codes,
//! and determinism of the relation export.

use std::process::{Command, Output};

fn fes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fes"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn eval_reports_matching_closed_form() {
    let out = fes(&["--json", "eval", "2,1", "--primes", "11..60"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["closed_form"].is_string());
    let values = v["values"].as_array().unwrap();
    assert!(!values.is_empty());
    for entry in values {
        assert_eq!(entry["value"], entry["closed_form_value"], "at p={}", entry["p"]);
    }
}

#[test]
fn stuffle_of_depth_one_compositions() {
    let out = fes(&["--json", "stuffle", "2", "-1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mut terms: Vec<(String, Vec<i64>)> = v["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            (
                t["coeff"].as_str().unwrap().to_string(),
                t["comp"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect(),
            )
        })
        .collect();
    terms.sort();
    assert_eq!(
        terms,
        vec![
            ("1".into(), vec![-3]),
            ("1".into(), vec![-1, 2]),
            ("1".into(), vec![2, -1]),
        ]
    );
}

#[test]
fn shuffle_multiplicities() {
    let out = fes(&["--json", "shuffle", "1", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], "2");
    assert_eq!(terms[0]["comp"].as_array().unwrap().len(), 2);
}

#[test]
fn relations_export_verifies_and_is_deterministic() {
    let dir = std::env::temp_dir();
    let a = dir.join("fes-cli-test-a.json");
    let b = dir.join("fes-cli-test-b.json");
    for path in [&a, &b] {
        let out = fes(&[
            "relations",
            "--weight",
            "4",
            "--signed",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let ta = std::fs::read(&a).unwrap();
    let tb = std::fs::read(&b).unwrap();
    assert_eq!(ta, tb, "export is not byte-identical between runs");

    let out = fes(&[
        "verify",
        "--relation-file",
        a.to_str().unwrap(),
        "--primes",
        "11..100",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let _ = std::fs::remove_file(&a);
    let _ = std::fs::remove_file(&b);
}

#[test]
fn table_sweep_exit_codes() {
    let out = fes(&["table", "--name", "wt6-depth3", "--primes", "11..100"]);
    assert!(out.status.success());

    // as-printed mode refutes the corrected rows, so the sweep exits 1
    let out = fes(&["table", "--name", "superbity2-wt4", "--as-printed", "--primes", "11..100"]);
    assert_eq!(out.status.code(), Some(1));

    let out = fes(&["table", "--list"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l == "conjectural-superbity2"));
}

#[test]
fn dim_table_json() {
    let out = fes(&["--json", "dim", "--max-weight", "4"]);
    assert!(out.status.success());
    let dims: Vec<usize> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(dims, vec![1, 0, 0, 1, 0]);
}

#[test]
fn usage_errors_exit_2() {
    let out = fes(&["eval", "not-a-composition"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fes(&["relations", "--weight", "40"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fes(&["table", "--name", "no-such-table"]);
    assert_eq!(out.status.code(), Some(2));
}
