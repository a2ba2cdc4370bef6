//! End-to-end tests for the qxi binary: golden output, exit codes, and
//! deterministic JSON.

use assert_cmd::Command;
use predicates::prelude::*;

fn qxi() -> Command {
    Command::cargo_bin("qxi").unwrap()
}

#[test]
fn expand_euler_function_matches_pentagonal_numbers() {
    qxi()
        .args(["expand", "f_1", "--order", "7"])
        .assert()
        .success()
        .stdout("0 1\n1 -1\n2 -1\n3 0\n4 0\n5 1\n6 0\n7 1\n");
}

#[test]
fn expand_supports_modular_reduction() {
    qxi()
        .args(["expand", "xi(q)", "--order", "6", "--mod", "3"])
        .assert()
        .success()
        .stdout("0 1\n1 2\n2 2\n3 2\n4 2\n5 2\n6 1\n");
}

#[test]
fn expand_json_carries_the_canonical_expression() {
    let out = qxi()
        .args(["expand", "1/(1-q)", "--order", "3", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["expression"], "1/(1 - q)");
    assert_eq!(doc["order"], 3);
    assert_eq!(doc["coeffs"], serde_json::json!(["1", "1", "1", "1"]));
}

#[test]
fn verify_accepts_a_true_identity() {
    qxi()
        .args(["verify", "phi(q) == phi(q^4) + 2*q*psi(q^8)", "--order", "100"])
        .assert()
        .success()
        .stdout(predicate::str::contains("ok to order 100"));
}

#[test]
fn verify_rejects_a_false_identity_with_exit_one() {
    qxi()
        .args(["verify", "phi(q) == psi(q)", "--order", "50"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("mismatch at q^1"));
}

#[test]
fn verify_honors_order_and_mod_clauses_in_the_line() {
    qxi()
        .args(["verify", "f_1^3 == f_3 [order 200] [mod 3]"])
        .assert()
        .success()
        .stdout(predicate::str::contains("ok to order 200 (mod 3)"));
}

#[test]
fn parse_errors_exit_two() {
    qxi().args(["expand", "f_0 + 1"]).assert().code(2);
    qxi().args(["expand", "phi(q"]).assert().code(2);
    qxi().args(["verify", "phi(q)"]).assert().code(2);
}

#[test]
fn usage_errors_exit_two() {
    qxi()
        .args(["congruence", "xi(q)", "--progression", "3,5", "--mod", "4"])
        .assert()
        .code(2);
    qxi()
        .args(["expand", "f_1", "--mod", "1"])
        .assert()
        .code(2);
}

#[test]
fn congruence_mod_nine_family_member_holds() {
    qxi()
        .args(["congruence", "xi(q)", "--progression", "96,76", "--mod", "9", "--count", "150"])
        .assert()
        .success()
        .stdout(predicate::str::contains("96n+76 == 0 (mod 9) holds for 150 terms"));
}

#[test]
fn failed_congruence_reports_the_witness_and_exits_one() {
    qxi()
        .args(["congruence", "xi(q)", "--progression", "3,0", "--mod", "4", "--count", "50"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("fails at n=0"));
}

#[test]
fn scan_finds_the_stated_mod_eight_classes() {
    qxi()
        .args(["scan", "xi(q)", "--mod", "8", "--max-A", "24", "--count", "100"])
        .assert()
        .success()
        .stdout(predicate::str::contains("24n+13 == 0 (mod 8)"))
        .stdout(predicate::str::contains("24n+22 == 0 (mod 8)"));
}

#[test]
fn scan_json_is_byte_identical_across_runs() {
    let run = || {
        qxi()
            .args(["scan", "xi(q)", "--mod", "4", "--max-A", "8", "--count", "64", "--format", "json"])
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn paper_suite_writes_a_schema_valid_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    qxi()
        .args(["paper-suite", "--order-scale", "20", "--report"])
        .arg(&path)
        .assert()
        .success()
        .stdout(predicate::str::contains("pass "));
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert!(doc["results"].as_array().unwrap().len() > 50);
    assert_eq!(doc["summary"]["skipped"], serde_json::json!(0));
    for r in doc["results"].as_array().unwrap() {
        if r["status"] == "fail" {
            assert!(r["adjudication"].is_string(), "{} fails without adjudication", r["id"]);
        }
    }
}

#[test]
fn paper_suite_rejects_a_zero_order_scale() {
    qxi().args(["paper-suite", "--order-scale", "0"]).assert().code(2);
}
