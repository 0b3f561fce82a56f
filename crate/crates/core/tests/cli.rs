//! Command-line behaviour: outputs, JSON schema, exit codes, determinism.

use std::process::Command;

use podles_core::cli::main_with;
use serde_json::Value;

fn run(args: &[&str]) -> (String, i32) {
    main_with(std::iter::once("podles").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (out, code) = run(&full);
    (serde_json::from_str(&out).unwrap_or_else(|e| panic!("{out}: {e}")), code)
}

#[test]
fn documented_examples() {
    assert_eq!(run(&["comm", "z", "zb"]), ("(q^-2 - 1) + (q^-2 - 1) * zb * z".to_string(), 0));
    assert_eq!(run(&["integrate", "--domain", "sphere", "rhoi^2"]), ("1/(q^4 + q^2 + 1)".to_string(), 0));
    assert_eq!(run(&["normalize", "z*zb"]).0, "(q^-2 - 1) + q^-2 * zb * z");
    assert_eq!(run(&["act", "Zp", "z"]).0, "s * z^2");
    assert_eq!(run(&["d", "zb*z"]).0, "zb * dz + q^2 * z * dzb");
    assert_eq!(run(&["pb", "zb", "z"]).0, "1 + zb * z");
    assert_eq!(run(&["pb", "wb", "w"]).0, "(u + u^2)");
    assert_eq!(run(&["star", "z*dz"]).0, run(&["normalize", "dzb*zb"]).0);
    assert_eq!(run(&["star", "--variant", "plane", "del"]).0, "-q^2 * delb");
}

#[test]
fn json_schema() {
    let (j, code) = json(&["integrate", "rhoi"]);
    assert_eq!(code, 0);
    assert_eq!(j["version"], "1");
    assert_eq!(j["command"], "integrate");
    assert_eq!(j["result"]["value"], "1/(q^2 + 1)");
    assert_eq!(j["result"]["status"], "finite");
    let (j, _) = json(&["normalize", "zb*dz"]);
    assert_eq!(j["result"]["value"]["grade"], 1);
    let (j, _) = json(&["patch", "--to", "w", "w"]);
    assert!(j["result"]["value"]["terms"].is_array());
}

#[test]
fn exit_codes() {
    let (j, code) = json(&["normalize", "z*)"]);
    assert_eq!(code, 1);
    assert_eq!(j["error"]["code"], "ParseError");
    assert_eq!(j["error"]["offset"], 2);
    let (j, code) = json(&["integrate", "--domain", "plane", "1"]);
    assert_eq!(code, 2);
    assert_eq!(j["error"]["code"], "NotIntegrable");
    assert_eq!(run(&["verify", "--suite", "nope"]).1, 2);
    assert_eq!(run(&["normalize", "w"]).1, 2);
    assert_eq!(run(&["pb", "1/(q - q)", "z"]).1, 2);
    assert_eq!(run(&["bogus"]).1, 2);
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["--format", "json", "--seed", "7", "verify", "--suite", "confluence"]);
    let b = run(&["--format", "json", "--seed", "7", "verify", "--suite", "confluence"]);
    assert_eq!(a, b);
    assert_eq!(a.1, 0);
    let (j, _) = json(&["verify", "--suite", "xi"]);
    let rows = j["result"]["suites"][0]["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["id"].as_str().unwrap().starts_with("Xi f -+ f Xi = lambda df") && r["status"] == "pass"));
}

#[test]
fn integration_suite_lists_recursion_rows() {
    let (j, code) = json(&["verify", "--suite", "integration"]);
    assert_eq!(code, 0);
    let rows = j["result"]["suites"][0]["rows"].as_array().unwrap();
    for l in 1..=12 {
        let id = format!("<rhoi^{l}> = 1/[{}]_q from invariance", l + 1);
        assert!(rows.iter().any(|r| r["id"] == id.as_str()), "{id}");
    }
}

#[test]
fn text_and_json_agree() {
    let (text, _) = run(&["mul", "dz", "z"]);
    let (j, _) = json(&["mul", "dz", "z"]);
    assert_eq!(j["result"]["text"], text.as_str());
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_podles");
    let out = Command::new(bin).args(["normalize", "rhoi*zb*z"]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "1 - rhoi");
    let out = Command::new(bin).args(["normalize", "z*)"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}
