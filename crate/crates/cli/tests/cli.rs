use std::process::{Command, Output};

use serde_json::Value;

fn degwild(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_degwild")).args(args).output().expect("run degwild")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json-only");
    let out = degwild(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn column(v: &Value, key: &str) -> Vec<Value> {
    v["rows"].as_array().unwrap().iter().map(|r| r[key].clone()).collect()
}

#[test]
fn tame_eval_graded_example() {
    let (code, v) = json(&["tame-eval", "--weights", "2,3", "--d", "0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["value"], -3);
    assert_eq!(v["certificate"]["argmaxGenerator"], "y");
    assert_eq!(v["oracle"]["samples"], 500);
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn lnd_eval_example() {
    let (code, v) = json(&["lnd-eval", "--d", "z,t^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["value"], 1);
    assert_eq!(v["kernelOnly"], 0);
}

#[test]
fn sandwich_eval_example() {
    let (code, v) = json(&["sandwich-eval", "--weights", "1,-1", "--d", "y,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["certificate"]["value"], -2);
}

#[test]
fn malformed_polynomial_exits_2_with_position() {
    let out = degwild(&["tame-eval", "--weights", "1,1", "--d", "x+*y,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("offset 2"), "{err}");
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(degwild(&["tame-eval", "--weights", "a,b", "--d", "0,1"]).status.code(), Some(2));
    assert_eq!(degwild(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(degwild(&["wild-b", "--steps", "-1"]).status.code(), Some(2));
}

#[test]
fn precondition_and_precision_exit_codes() {
    // z d/dz is not locally nilpotent
    assert_eq!(degwild(&["lnd-eval", "--lnd", "z,0", "--d", "0,1"]).status.code(), Some(3));
    assert_eq!(degwild(&["wild-b", "--steps", "9", "--level", "8"]).status.code(), Some(3));
    assert_eq!(degwild(&["wild-a", "--precision", "4"]).status.code(), Some(4));
}

#[test]
fn failed_verdict_exits_1() {
    // x alone does not generate k[x, y], so the formula undercounts.
    let (code, v) = json(&["tame-eval", "--weights", "1,1", "--d", "0,1", "--xs", "x"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn wild_b_rows() {
    let (code, v) = json(&["wild-b", "--steps", "3"]);
    assert_eq!(code, 0);
    let rows: Vec<(i64, i64, i64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["deg"].as_i64().unwrap(), r["degD"].as_i64().unwrap(), r["delta"].as_i64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(3, 0, -3), (3, 3, 0), (3, 6, 3), (3, 9, 6)]);
    assert_eq!(v["negativeDegreeElement"]["degree"], -3);
}

#[test]
fn wild_b_zero_steps() {
    let (code, v) = json(&["wild-b", "--steps", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn wild_a_delta_column() {
    let (code, v) = json(&["wild-a", "--n-max", "4"]);
    assert_eq!(code, 0);
    assert_eq!(column(&v, "delta"), (0..=4).map(Value::from).collect::<Vec<_>>());
}

#[test]
fn expand_example() {
    let out = degwild(&["expand", "--a", "2,5", "--poly", "Y^3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[({0,1},1),({0},2)]"));
    let (_, v) = json(&["expand", "--a", "2,5", "--poly", "Y^3"]);
    assert_eq!(v["reconstructs"], true);
}

#[test]
fn expand_needs_enough_a() {
    assert_eq!(degwild(&["expand", "--a", "2", "--poly", "Y^4"]).status.code(), Some(3));
}

#[test]
fn axioms_graded_and_laurent_b() {
    let (code, v) = json(&["axioms", "--kind", "graded", "--weights", "2,3", "--samples", "500"]);
    assert_eq!(code, 0);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    let (code, v) = json(&["axioms", "--kind", "laurentB", "--samples", "200"]);
    assert_eq!(code, 0);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
    for d in v["observedDegrees"].as_array().unwrap() {
        let d = d.as_i64().unwrap();
        assert!(d >= 0 && d != 1, "degree {d}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["axioms", "--kind", "localized", "--samples", "100", "--seed", "9"][..],
        &["tame-eval", "--weights", "1,1", "--d", "y^2,x^2", "--samples", "50"][..],
        &["wild-a", "--seeded", "--seed", "5"][..],
    ] {
        let a = degwild(args);
        let b = degwild(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn out_file_receives_json() {
    let path = std::env::temp_dir().join(format!("degwild-cli-test-{}.json", std::process::id()));
    let out = degwild(&["wild-b", "--steps", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["command"], "wild-b");
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: pass"));
}
