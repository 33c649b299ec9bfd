//! End-to-end tests of the binary: exit codes, pinned text output, JSON
//! shapes against the published schemas, input handling, and the sieve
//! cache. Every invocation strips the cache variable unless the test is
//! about the cache.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn apsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apsolve"))
        .args(args)
        .env_remove("APSOLVE_SOURCE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

fn json_line(output: &Output) -> Value {
    let text = stdout(output);
    assert_eq!(text.lines().count(), 1, "json output is a single line: {text:?}");
    serde_json::from_str(text.trim()).expect("stdout parses as json")
}

fn schema(name: &str) -> Value {
    let mut path = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    path.pop();
    path.pop();
    path.push("schemas");
    path.push(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path:?}: {e}"));
    serde_json::from_str(&text).expect("schema parses")
}

fn assert_validates(schema_name: &str, instance: &Value) {
    if let Err(problem) = apsolve_testkit::schema::validate(&schema(schema_name), instance) {
        panic!("{schema_name}: {problem}\ninstance: {instance}");
    }
}

fn diagnostic(output: &Output) -> Value {
    let text = stderr(output);
    assert_eq!(text.lines().count(), 1, "diagnostic is a single line: {text:?}");
    serde_json::from_str(text.trim()).expect("stderr parses as json")
}

#[test]
fn check_pinned_text_output() {
    let out = apsolve(&["check", "-m", "[[1,1,-2]]"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("null-diagonal: true, dim 2"));
    assert!(text.contains("basis vector 1: 1 1 1"));

    let out = apsolve(&["check", "-m", "[[1,1,-1]]"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("null-diagonal: false, dim 2"));
}

#[test]
fn check_json_validates_for_both_verdicts() {
    for matrix in ["[[1,1,-2]]", "[[1,1,-1]]", "[[1,0],[0,1]]"] {
        let out = apsolve(&["check", "-m", matrix, "--json"]);
        assert!(out.status.success(), "{matrix}: {}", stderr(&out));
        assert_validates("check.v1.json", &json_line(&out));
    }
}

#[test]
fn solve_pinned_example() {
    let out = apsolve(&[
        "solve", "-m", "[[1,1,-2]]", "--source", "primes", "--bound", "500", "--count", "1",
        "--json",
    ]);
    assert!(out.status.success());
    let value = json_line(&out);
    assert_validates("solve.v1.json", &value);
    assert_eq!(value["solutions"][0]["x"], serde_json::json!(["7", "3", "5"]));
    assert_eq!(value["solutions"][0]["ap"]["a"], "3");
    assert_eq!(value["plan"]["required_ap_length"], 3);
}

#[test]
fn matrix_can_come_from_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("m.txt");
    std::fs::write(&path, "1 3\n1 1 -2\n").expect("write matrix");
    let from_file = apsolve(&["check", "-m", path.to_str().expect("utf-8 path")]);
    let inline = apsolve(&["check", "-m", "[[1,1,-2]]"]);
    assert!(from_file.status.success());
    assert_eq!(stdout(&from_file), stdout(&inline));
}

#[test]
fn missing_matrix_file_is_a_validation_error() {
    let out = apsolve(&["check", "-m", "/no/such/file.txt"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let diag = diagnostic(&out);
    assert_eq!(diag["error"], "validation");
    assert!(diag["message"].as_str().expect("message is text").contains("file.txt"));
}

#[test]
fn malformed_inline_matrices_are_validation_errors() {
    for bad in ["[[1,2],[3]]", "[[]]", "[[1,a]]", "[1,2]", "[[1,2]", ""] {
        let out = apsolve(&["check", "-m", bad]);
        assert_eq!(out.status.code(), Some(2), "input {bad:?}");
        assert_eq!(diagnostic(&out)["error"], "validation", "input {bad:?}");
    }
}

#[test]
fn unknown_source_is_a_validation_error() {
    let out =
        apsolve(&["solve", "-m", "[[1,1,-2]]", "--source", "martians", "--bound", "100"]);
    assert_eq!(out.status.code(), Some(2));
    let diag = diagnostic(&out);
    assert_eq!(diag["error"], "validation");
    assert!(diag["message"].as_str().expect("message is text").contains("martians"));
}

#[test]
fn usage_errors_are_machine_parsable() {
    let out = apsolve(&["solve", "-m", "[[1,1,-2]]"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "validation");

    let out = apsolve(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "validation");

    let out = apsolve(&[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "validation");
}

#[test]
fn help_and_version_exit_zero() {
    let out = apsolve(&["--help"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("apsolve"));

    let out = apsolve(&["--version"]);
    assert!(out.status.success());
}

#[test]
fn matrix_and_averages_are_mutually_exclusive() {
    let out = apsolve(&[
        "solve", "-m", "[[1,1,-2]]", "--averages", "2", "--source", "primes", "--bound", "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "validation");
}

#[test]
fn converse_rejects_short_progressions() {
    let out = apsolve(&[
        "converse", "-m", "[[1,1,-1]]", "-k", "2", "--source", "primes", "--bound", "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(diagnostic(&out)["error"], "validation");
}

#[test]
fn converse_json_matches_schema_and_pins() {
    let out = apsolve(&[
        "converse", "-m", "[[1,1,-1]]", "-k", "3", "--source", "primes", "--bound", "10000",
        "--json",
    ]);
    assert!(out.status.success());
    let value = json_line(&out);
    assert_validates("converse.v1.json", &value);
    assert_eq!(value["violating_row"], 1);
    assert_eq!(value["C"], "3");
    assert_eq!(value["base_bound"], 9);
    assert_eq!(value["step_bound"], 9);
    assert_eq!(value["solutions"], serde_json::json!([]));
    assert_eq!(value["brute_force_agreement"], true);
}

#[test]
fn classify_json_covers_all_three_verdicts() {
    let cases = [
        ("[[1,1,-2]]", "infinite-family", "stream"),
        ("[[1,1,-1]]", "finite", "enumeration"),
        ("[[1,-1]]", "degenerate", "degenerate"),
    ];
    for (matrix, verdict, key) in cases {
        let out = apsolve(&[
            "classify", "-m", matrix, "--source", "naturals", "--bound", "60", "--count", "2",
            "--json",
        ]);
        assert!(out.status.success(), "{matrix}: {}", stderr(&out));
        let value = json_line(&out);
        assert_validates("classify.v1.json", &value);
        assert_eq!(value["verdict"], verdict, "{matrix}");
        assert!(value[key].is_object(), "{matrix} carries `{key}` evidence");
    }
}

#[test]
fn find_ap_lists_in_order_and_resumes() {
    let out = apsolve(&["find-ap", "--source", "primes", "-k", "3", "--bound", "100", "--count",
        "3", "--json"]);
    assert!(out.status.success());
    let value = json_line(&out);
    assert_validates("find-ap.v1.json", &value);
    assert_eq!(
        value["aps"],
        serde_json::json!([
            {"k": 3, "a": "3", "d": "2"},
            {"k": 3, "a": "3", "d": "4"},
            {"k": 3, "a": "3", "d": "8"}
        ])
    );

    let out = apsolve(&["find-ap", "--source", "primes", "-k", "3", "--bound", "100", "--after",
        "3,2", "--json"]);
    let value = json_line(&out);
    assert_eq!(value["aps"], serde_json::json!([{"k": 3, "a": "3", "d": "4"}]));

    let out = apsolve(&["find-ap", "--source", "multiples:7", "-k", "4", "--bound", "22",
        "--count", "5", "--json"]);
    let value = json_line(&out);
    assert_eq!(value["aps"], serde_json::json!([{"k": 4, "a": "0", "d": "7"}]));
    assert_eq!(value["exhausted"], true);
}

#[test]
fn audit_json_matches_schema() {
    let out = apsolve(&["audit-primelike", "--source", "primes", "--bound", "500", "--json"]);
    assert!(out.status.success());
    let value = json_line(&out);
    assert_validates("audit-primelike.v1.json", &value);
    assert_eq!(value["prime_like"], true);
    assert_eq!(value["violations"], serde_json::json!([]));

    let out = apsolve(&["audit-primelike", "--source", "naturals", "--bound", "40", "--json"]);
    let value = json_line(&out);
    assert_validates("audit-primelike.v1.json", &value);
    assert_eq!(value["prime_like"], false);
}

#[test]
fn demo_equivalence_recovers_the_prime_quintuple() {
    let out = apsolve(&["demo", "equivalence", "--source", "primes", "-n", "5", "--bound",
        "1000", "--count", "1", "--json"]);
    assert!(out.status.success());
    let value = json_line(&out);
    assert_validates("demo-equivalence.v1.json", &value);
    assert_eq!(value["aps"], serde_json::json!([{"k": 5, "a": "5", "d": "6"}]));
    assert_eq!(value["nullspace_dimension"], 2);
}

#[test]
fn demo_et_sum_is_exact() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("set.txt");
    std::fs::write(&path, "1\n2\n4\n").expect("write set");
    let source = format!("file:{}", path.display());
    let out = apsolve(&["demo", "et-sum", "--source", &source, "--bound", "10", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let value = json_line(&out);
    assert_validates("demo-et-sum.v1.json", &value);
    assert_eq!(value["numerator"], "7");
    assert_eq!(value["denominator"], "4");
    assert_eq!(value["decimal"], "1.750000000000");
    assert_eq!(value["terms"], 3);
    assert_eq!(value["skipped_zero"], false);
}

#[test]
fn averages_output_matches_schema() {
    let out = apsolve(&["solve", "--averages", "2", "--source", "primes", "--bound", "200",
        "--count", "5", "--json"]);
    assert!(out.status.success());
    let value = json_line(&out);
    assert_validates("averages.v1.json", &value);
    assert_eq!(value["n"], 2);
    assert_eq!(value["tuples"].as_array().expect("tuples array").len(), 5);
    assert_eq!(value["tuples"][0]["average"], "5");
}

#[test]
fn sieve_cache_round_trips_and_survives_corruption() {
    let dir = tempfile::tempdir().expect("tempdir");
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_apsolve"))
            .args(args)
            .env("APSOLVE_SOURCE_CACHE", dir.path())
            .output()
            .expect("binary runs")
    };
    let args =
        ["find-ap", "--source", "primes", "-k", "3", "--bound", "300", "--count", "2", "--json"];

    let first = run(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    let cache_file = dir.path().join("primes-300.sieve");
    assert!(cache_file.exists(), "first run writes the cache");

    let second = run(&args);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout, "cached run output is identical");

    std::fs::write(&cache_file, b"not a sieve at all").expect("corrupt the cache");
    let third = run(&args);
    assert!(third.status.success(), "corrupted cache falls back to sieving");
    assert_eq!(first.stdout, third.stdout);
    assert!(stderr(&third).contains("ignoring sieve cache"), "fallback warns: {}", stderr(&third));
}

#[test]
fn cache_never_changes_stdout() {
    let dir = tempfile::tempdir().expect("tempdir");
    let args = ["demo", "et-sum", "--source", "primes", "--bound", "100", "--json"];
    let cached = Command::new(env!("CARGO_BIN_EXE_apsolve"))
        .args(args)
        .env("APSOLVE_SOURCE_CACHE", dir.path())
        .output()
        .expect("binary runs");
    let plain = apsolve(&args);
    assert!(cached.status.success() && plain.status.success());
    assert_eq!(cached.stdout, plain.stdout);
}
