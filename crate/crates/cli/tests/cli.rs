//! End-to-end runs of the `pact` binary on the golden corpus.
//!
//! Set `PACT_BLESS=1` to rewrite the expected JSON files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pact_cli::{parse_spec, print_spec};

const GOLDEN: [&str; 5] = ["counterexample", "enveloping", "kpar", "matrix", "ideals"];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn pact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pact")).args(args).env("PACT_THREADS", "2").output().expect("binary runs")
}

fn run_json(name: &str) -> Output {
    let input = golden_dir().join(format!("{name}.pact"));
    pact(&["run", "--format", "json", input.to_str().unwrap()])
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn golden_reports_match() {
    let bless = std::env::var_os("PACT_BLESS").is_some();
    for name in GOLDEN {
        let out = run_json(name);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
        let expected = golden_dir().join(format!("{name}.json"));
        if bless {
            std::fs::write(&expected, &out.stdout).unwrap();
            continue;
        }
        let want = std::fs::read(&expected).unwrap();
        assert!(out.stdout == want, "{name}: report differs from {}", expected.display());
    }
}

#[test]
fn consecutive_runs_are_identical() {
    for name in GOLDEN {
        let first = run_json(name);
        let second = run_json(name);
        assert_eq!(first.stdout, second.stdout, "{name}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let input = golden_dir().join("kpar.pact");
    let one = Command::new(env!("CARGO_BIN_EXE_pact"))
        .args(["run", "--format", "json", input.to_str().unwrap()])
        .env("PACT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(one.stdout, run_json("kpar").stdout);
}

#[test]
fn reports_are_json_with_schema_version() {
    let out = run_json("counterexample");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let results = v["results"].as_array().unwrap();
    let assoc = results.iter().find(|r| r["command"].as_str().unwrap().starts_with("cmd assoc")).unwrap();
    assert_eq!(assoc["associative"], false);
    assert_eq!(assoc["xx_x"], "0");
    assert_eq!(assoc["x_xx"], "u@g");
}

#[test]
fn violated_expectation_exits_one() {
    let path = scratch("violated.pact", "field rationals\ngroup z = cyclic 2\ncmd kpar z expect dim_kpar=4\n");
    let out = pact(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[VIOLATED]"));
    assert!(text.contains("expected dim_kpar=4, got 3"));
}

#[test]
fn parse_error_exits_two_with_position() {
    let path = scratch("malformed.pact", "field rationals\ngroup g = cyclic x\n");
    for verb in ["run", "check"] {
        let out = pact(&[verb, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{verb}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(":2:18:"), "{err}");
    }
}

#[test]
fn unknown_name_exits_two() {
    let path = scratch("unknown.pact", "field rationals\ncmd kpar nowhere\n");
    assert_eq!(pact(&["check", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pact(&["run", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(pact(&[]).status.code(), Some(2));
    assert_eq!(pact(&["run"]).status.code(), Some(2));
    assert_eq!(pact(&["run", "--format", "yaml", "x.pact"]).status.code(), Some(2));
    assert_eq!(pact(&["run", "/nonexistent/input.pact"]).status.code(), Some(2));
}

#[test]
fn check_accepts_the_golden_corpus() {
    for name in GOLDEN {
        let input = golden_dir().join(format!("{name}.pact"));
        let out = pact(&["check", input.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).join("enveloping.json");
    let input = golden_dir().join("enveloping.pact");
    let out = pact(&["run", "--format", "json", "--out", target.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&target).unwrap(), run_json("enveloping").stdout);
}

#[test]
fn print_then_parse_round_trips() {
    for name in GOLDEN {
        let text = std::fs::read_to_string(golden_dir().join(format!("{name}.pact"))).unwrap();
        let doc = parse_spec(&text).unwrap();
        let printed = print_spec(&doc);
        let again = parse_spec(&printed).unwrap();
        assert_eq!(doc, again, "{name}");
        assert_eq!(print_spec(&again), printed, "{name}");
    }
}
