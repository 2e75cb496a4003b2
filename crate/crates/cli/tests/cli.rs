//! Binary-level contract tests: output formats, JSON round-trips, and the
//! exit-code convention (0 success, 1 failed verification, 2 usage error).

use std::process::{Command, Output};

use qschubert::perm::{Permutation, Space};
use qschubert::qprod::general_product;
use qschubert::qring::SchubertExpansion;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qschubert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim().to_string()
}

#[test]
fn product_text_examples() {
    assert_eq!(
        stdout(&["product", "--n", "3", "--space", "Fl", "--u", "s:1", "--v", "s:1"]),
        "S[3,1,2] + q1"
    );
    assert_eq!(
        stdout(&["product", "--u", "1,2,3", "--v", "1,2,3", "--n", "3", "--space", "Fl"]),
        "S[1,2,3]"
    );
}

#[test]
fn product_json_roundtrip() {
    let text = stdout(&[
        "product", "--n", "4", "--space", "X", "--u", "s:1,3", "--v", "s:3", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let parsed = SchubertExpansion::from_json(&value).unwrap();
    let u = Permutation::parse("s:1,3", 4).unwrap();
    let v = Permutation::parse("s:3", 4).unwrap();
    let expected = general_product(&u, &v, Space::SchubertDivisorX).unwrap();
    assert_eq!(parsed, expected);
}

#[test]
fn product_tsv_has_one_row_per_term() {
    let text = stdout(&[
        "product", "--n", "4", "--space", "X", "--u", "s:1,3", "--v", "s:3", "--format", "tsv",
    ]);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "w\td\tc");
    assert_eq!(rows.len(), 5); // four terms plus header
}

#[test]
fn exit_codes() {
    // 0: success
    assert_eq!(
        run(&["product", "--n", "3", "--space", "Fl", "--u", "s:1", "--v", "s:2"])
            .status
            .code(),
        Some(0)
    );
    // 2: not a class of X
    let out = run(&[
        "product", "--n", "4", "--space", "X", "--u", "2,3,4,1", "--v", "s:3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not a class of X"), "stderr: {err}");
    // 2: malformed permutation
    assert_eq!(
        run(&["product", "--n", "3", "--space", "Fl", "--u", "1,1,2", "--v", "s:1"])
            .status
            .code(),
        Some(2)
    );
    // 2: size guard without --force
    assert_eq!(
        run(&["product", "--n", "7", "--space", "Fl", "--u", "s:1", "--v", "s:1"])
            .status
            .code(),
        Some(2)
    );
    // 2: clap usage error
    assert_eq!(run(&["product", "--n", "3"]).status.code(), Some(2));
    // 2: verify bounds below the suite minimum
    assert_eq!(
        run(&["verify", "relations", "--n", "2..4"]).status.code(),
        Some(2)
    );
    // 0: passing verification
    assert_eq!(
        run(&["verify", "transition", "--n", "2..3"]).status.code(),
        Some(0)
    );
}

#[test]
fn qschubert_outputs() {
    assert_eq!(
        stdout(&["qschubert", "--n", "3", "--w", "3,2,1"]),
        "x1^2*x2 + x1*q1"
    );
    assert_eq!(
        stdout(&["qschubert", "--n", "3", "--w", "3,2,1", "--classical"]),
        "x1^2*x2"
    );
    let json = stdout(&["qschubert", "--n", "3", "--w", "3,2,1", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["kind"], "quantum");
    assert_eq!(value["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn poly_outputs() {
    assert_eq!(
        stdout(&["poly", "--name", "Ehat", "--n", "4", "--i", "1"]),
        "x1 + x2 + x3 + x4"
    );
    assert_eq!(
        stdout(&["poly", "--name", "e", "--n", "3", "--i", "3"]),
        "x1*x2*x3"
    );
    assert_eq!(
        stdout(&["poly", "--name", "E", "--n", "3", "--i", "2", "--k", "2"]),
        "x1*x2 + q1"
    );
    assert_eq!(
        run(&["poly", "--name", "bogus", "--n", "3", "--i", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["poly", "--name", "E", "--n", "3", "--i", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn zd_outputs() {
    let text = stdout(&["zd", "--n", "3", "--d", "1,1"]);
    assert!(text.contains("3,2,1"));
    // widest interval for d = (0,1,1) is alpha_{24}, so z_d = t_{24}
    let json = stdout(&[
        "zd", "--n", "4", "--d", "0,1,1", "--u", "1,2,3,4", "--format", "json",
    ]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["z"], serde_json::json!([1, 4, 3, 2]));
    assert_eq!(value["neighborhood"], serde_json::json!([1, 4, 3, 2]));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("qschubert-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("product.json");
    let out = run(&[
        "product",
        "--n",
        "3",
        "--space",
        "Fl",
        "--u",
        "s:1",
        "--v",
        "s:1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let content = std::fs::read_to_string(&path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&content).unwrap();
    assert_eq!(value["n"], 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn table_formats() {
    let tsv = stdout(&["table", "--n", "3", "--space", "X"]);
    let rows: Vec<&str> = tsv.lines().collect();
    assert_eq!(rows[0], "u\tv\tw\td\tc");
    assert!(rows.len() > 16);
    let json = stdout(&["table", "--n", "3", "--space", "Fl", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["entries"].as_array().unwrap().len(), 36);
    // guarded at rank 4 without --force
    assert_eq!(
        run(&["table", "--n", "5", "--space", "Fl"]).status.code(),
        Some(2)
    );
}
