use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const Q10: &str = "x^2*z+y^3+z^4+x*y*z^2+x^2*y^2+y*z^3+x*y*z^3+y^2*z^3";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_possing")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = run(&a);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn tjurina_in_characteristic_two() {
    let v = json(&["tau", "x^4+x^2*y^2+y^5", "--char", "2"]);
    assert_eq!(v["result"]["value"], 16);
    let out = run(&["tau", "x^4+x^2*y^2+y^5", "--char", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("value") && l.ends_with(" 16")), "{text}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["tau", "x^2+y^2", "--char", "4"]).status.code(), Some(1));
    assert_eq!(run(&["tau", "x^2+", "--char", "3"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    let refused = run(&["normalform", "x^4+x^2*y^2+y^5", "--char", "2"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).starts_with("error[condition_fails]"));
}

#[test]
fn errors_are_reported_as_json_too() {
    let out = run(&["normalform", "x^4+x^2*y^2+y^5", "--char", "2", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "condition_fails");
}

#[test]
fn explicit_weights() {
    let v = json(&["cpoly", "x^4+y^5", "--weights", "4,6;5,5"]);
    assert_eq!(v["polytope"]["weights"], serde_json::json!([[4, 6], [5, 5]]));
    assert_eq!(json(&["val", "x^2*y^2", "--weights", "4,6;5,5"])["result"]["value"], 20);
}

#[test]
fn json_output_is_stable() {
    let args = ["normalform", Q10, "--char", "2", "--weights", "9,8,6", "--json"];
    let a = run(&args).stdout;
    assert_eq!(a, run(&args).stdout);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(again.trim_end(), String::from_utf8(a).unwrap().trim_end());
}

#[test]
fn q10_coefficient_table() {
    let v = json(&["normalform", Q10, "--char", "2", "--weights", "9,8,6"]);
    let allowed = ["x*y*z^2", "x*z^3", "y*z^3", "x*y*z^3"];
    let rows = v["result"]["coefficients"].as_array().unwrap();
    assert!(!rows.is_empty());
    for row in rows {
        assert!(allowed.contains(&row["monomial"].as_str().unwrap()), "{row}");
    }
}

#[test]
fn reads_polynomial_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_possing"))
        .args(["mu", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x^3+y^4\n").unwrap();
    let out = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["value"], 6);
}

#[test]
fn timing_goes_to_stderr() {
    let plain = run(&["mu", "x^3+y^4"]);
    let timed = run(&["mu", "x^3+y^4", "--timing"]);
    assert_eq!(plain.stdout, timed.stdout);
    assert!(!timed.stderr.is_empty());
}

#[test]
fn selftest_single_criterion() {
    let out = run(&["selftest", "--criterion", "2", "--cases", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
}
