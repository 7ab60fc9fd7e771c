use std::process::{Command, Output};

use serde_json::Value;

fn superk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_n1_passes() {
    let o = superk(&["verify", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("PASS"));
    assert!(!out.contains("FAIL"));
    assert!(out.contains("q - q^-1"));
}

#[test]
fn verify_json_has_schema_and_sorted_keys() {
    let o = superk(&["verify", "--n", "2", "--json", "--seed", "0x2a"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).expect("valid json");
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["parameters"]["seed"], "0x2a");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn verify_max_weight_limits_blocks() {
    let o = superk(&["verify", "--n", "3", "--max-weight", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("FE - EF on block 1 "));
    assert!(!out.contains("FE - EF on block 3 "));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--n", "0"][..],
        &["verify", "--n", "7"],
        &["verify"],
        &["verify", "--n", "2", "--seed", "zz"],
        &["matrices", "--n", "2", "--weight", "1", "--side", "algebra"],
        &["matrices", "--n", "2", "--weight", "0", "--side", "sideways"],
        &["koszul", "--rank", "9", "--k", "1"],
        &["koszul", "--rank", "2", "--k", "3"],
    ] {
        assert_eq!(superk(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn algebra_matrices_n1() {
    let o = superk(&["matrices", "--n", "1", "--weight", "1", "--side", "algebra", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["blocks"]["F"]["entries"], serde_json::json!([["1"]]));
    assert_eq!(v["blocks"]["F"]["codomain_weight"], -1);
    assert_eq!(v["blocks"]["K"]["entries"], serde_json::json!([["q"]]));
}

#[test]
fn geometry_matrices_negative_weight() {
    let o = superk(&["matrices", "--n", "2", "--weight", "-2", "--side", "geometry"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("E(-2 -> 0)"));
}

#[test]
fn koszul_small_cases_pass() {
    for (r, k) in [("2", "1"), ("0", "0"), ("3", "0"), ("3", "3")] {
        let o = superk(&["koszul", "--rank", r, "--k", k]);
        assert_eq!(o.status.code(), Some(0), "rank {r} k {k}: {}", stdout(&o));
    }
    let o = superk(&["koszul", "--rank", "2", "--k", "1", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["command"], "koszul");
    assert!(v["complexes"]["cone_plus"].is_object() || v["complexes"]["cone_plus"].is_array());
}
