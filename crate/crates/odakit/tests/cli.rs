use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn odakit(args: &[&str]) -> Output {
    odakit_env(args, None)
}

fn odakit_env(args: &[&str], guard: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_odakit"));
    cmd.args(args).env_remove("ODAKIT_GUARD");
    if let Some(g) = guard {
        cmd.env("ODAKIT_GUARD", g);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn valid_algebra_passes() {
    let o = odakit(&["check-axioms", "--input", &fixture("base1.json")]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn broken_algebra_fails_with_one() {
    let o = odakit(&["--json", "check-axioms", "--input", &fixture("broken_dom.json")]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert!(v["verdicts"].as_array().unwrap().iter().any(|d| d["status"] == "fail" && d["asserted"] == true));
}

#[test]
fn bad_input_exits_three() {
    let o = odakit(&["check-axioms", "--input", &fixture("truncated.json")]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("truncated.json"));
    assert_eq!(code(&odakit(&["check-axioms", "--input", &fixture("missing.json")])), 3);
    assert_eq!(code(&odakit(&["no-such-command"])), 3);
    assert_eq!(code(&odakit(&["examples", "--which", "d9"])), 3);
}

#[test]
fn guard_exits_two() {
    let o = odakit_env(&["completion-axioms", "--base", "2"], Some("4"));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("ODAKIT_GUARD"));
    assert_eq!(code(&odakit_env(&["examples"], Some("lots"))), 3);
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        &["--json", "preserve", "--seed", "3", "--trials", "20"][..],
        &["--json", "correspondence-check", "--seed", "3", "--trials", "10"][..],
        &["--json", "examples"][..],
    ] {
        let a = odakit(args);
        let b = odakit(args);
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!String::from_utf8_lossy(&a.stdout).contains("elapsed"));
    }
    let a = odakit(&["--json", "preserve", "--seed", "3", "--trials", "20"]);
    let c = odakit(&["--json", "preserve", "--seed", "4", "--trials", "20"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn e2fail_set_is_already_closed() {
    let o = odakit(&["--json", "complete", "--base", "4", "--generators", &fixture("e2fail.json")]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["data"]["iterations"], 1);
    assert_eq!(v["data"]["result"], v["data"]["input"]);
}

#[test]
fn e6fail_union_closes_to_zero_up() {
    let o = odakit(&["--json", "complete", "--base", "2", "--generators", &fixture("e6fail.json")]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["data"]["result"], serde_json::json!([[]]));
    let zero = v["verdicts"].as_array().unwrap().iter().find(|d| d["name"] == "result is 0↑").unwrap();
    assert_eq!(zero["status"], "pass");
}

#[test]
fn represent_small_algebras() {
    for f in ["base1.json", "one_element.json"] {
        let o = odakit(&["--json", "represent", "--input", &fixture(f), "--verify"]);
        assert_eq!(code(&o), 0, "{f}");
        let v = json(&o);
        assert!(v["verdicts"].as_array().unwrap().iter().all(|d| d["status"] == "pass"), "{f}");
    }
}

#[test]
fn examples_and_completion_axioms() {
    assert_eq!(code(&odakit(&["examples"])), 0);
    let o = odakit(&["--json", "completion-axioms", "--base", "2"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout).into_owned();
    assert!(text.contains("D6"));
}
