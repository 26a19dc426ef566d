use std::io::Write;
use std::process::{Command, Output};

use rsw_core::expr::{parse_ratfunc, Vocabulary};
use serde_json::Value;

fn rsw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsw")).args(args).output().unwrap()
}

fn spec_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn conductor(text: &str) -> (Output, Value) {
    let f = spec_file(text);
    let out = rsw(&["conductor", f.path().to_str().unwrap()]);
    let v = if out.status.success() { json(&out) } else { Value::Null };
    (out, v)
}

#[test]
fn exceptional_character() {
    let (out, v) = conductor(r#"p=2 s=1 mode=local components=["x/t^2"]"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["sw"], 2);
    assert_eq!(v["dt"], 2);
    assert_eq!(v["cform"]["c_pi"], "y");
    assert_eq!(v["cform"]["c_x"], "1");
    assert_eq!(v["cform"]["level"], 2);
    assert_eq!(v["cform"]["radicial"], true);
    assert_eq!(v["cform"]["note"], "y^2 = x");
}

#[test]
fn residues_print_in_canonical_range() {
    let (_, v) = conductor(r#"p=3 components=["1/t"]"#);
    assert_eq!(v["sw"], 1);
    assert_eq!(v["dt"], 2);
    assert_eq!(v["rsw"]["alpha"], "1");
    assert_eq!(v["rsw"]["beta"], "0");
    let (_, v) = conductor(r#"p=3 components=["2/t^2"]"#);
    assert_eq!(v["rsw"]["alpha"], "1");
    let (_, v) = conductor(r#"p=3 components=["x/t"]"#);
    assert_eq!(v["rsw"]["beta"], "2");
}

#[test]
fn integral_character() {
    let (_, v) = conductor(r#"p=2 components=["t"]"#);
    assert_eq!(v["sw"], 0);
    assert_eq!(v["dt"], 1);
    assert!(v["rsw"].is_null());
    assert!(v["cform"].is_null());
}

#[test]
fn coefficients_round_trip() {
    let (_, v) = conductor(r#"p=3 components=["(x^2 + 1)/(x*t^4) + x/t"]"#);
    let c_pi = v["cform"]["c_pi"].as_str().unwrap();
    let parsed = parse_ratfunc(c_pi, 3, &Vocabulary::LOCAL).unwrap();
    assert_eq!(parsed.to_expr(&rsw_core::base::VarNames::LOCAL), c_pi);
    assert_eq!(v["dt"], 5);
}

#[test]
fn divisor_command() {
    let f = spec_file("p = 2\nmode = global\ncomponents = [\"x2/x1^3\"]\n");
    let out = rsw(&["divisor", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["R_chi"]["D1"], 3);
    assert_eq!(v["R_chi"]["D2"], 0);
    assert_eq!(v["R_chi_prime"]["D1"], 4);
    assert_eq!(v["R_chi_prime"]["D2"], 1);
    assert_eq!(v["forms"]["D1"]["c_pi"], "x2");
    assert_eq!(v["germs"]["D1"]["status"], "consistent");

    let f = spec_file("p = 3\nmode = global\ncomponents = [\"x1*x2 + x1\"]\n");
    let v = json(&rsw(&["divisor", f.path().to_str().unwrap()]));
    assert_eq!(v["R_chi"], serde_json::json!({"D1": 0, "D2": 0}));
    assert_eq!(v["R_chi_prime"], serde_json::json!({"D1": 1, "D2": 1}));

    let f = spec_file("p = 2\nmode = global\ncomponents = [\"1/(x1*x2)\"]\n");
    let v = json(&rsw(&["divisor", f.path().to_str().unwrap()]));
    assert_eq!(v["forms"]["D2"]["c_pi"], "1/x1");
}

#[test]
fn bad_inputs_exit_with_2() {
    let f = spec_file("p = 2\ncomponents = [\"x/t^2\",\n  \"1/q\"]\n");
    let out = rsw(&["conductor", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(":3:"), "{err}");

    let (out, _) = conductor(r#"p=4 components=["t"]"#);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("p must be prime in {2,3,5,7}"));

    let (out, _) = conductor(r#"p=2 s=1 components=["x/t^2","1/t"]"#);
    assert_eq!(out.status.code(), Some(2));

    let (out, _) = conductor(r#"p=2 mode=global components=["x1"]"#);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(rsw(&["conductor", "/nonexistent/spec"]).status.code(), Some(2));
    assert_eq!(rsw(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = rsw(&["verify", "--suite", "qpolys", "--seed", "1", "--cases", "200"]);
    assert_eq!(a.status.code(), Some(0));
    let b = rsw(&["verify", "--suite", "qpolys", "--seed", "1", "--cases", "200"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["ok"], true);
    assert_eq!(v["suites"][0]["name"], "qpolys");
}

#[test]
fn verify_suites() {
    let out = rsw(&["verify", "--suite", "crosscheck", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS] crosscheck: 60/60"), "{text}");

    let out = rsw(&["verify", "--suite", "lemmas", "--cases", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    assert!(v["suites"].as_array().unwrap().is_empty());
}
