use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use skewline_core::configs::{builtin, element_from_json, emit_config, BuiltinName, MarkedParameterSets};
use skewline_core::{stabilizer, Field, FieldDescriptor, PglMap};

fn skewline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = skewline(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    skewline(args).status.code().expect("exit code")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("skewline-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn matrices(field: &Field, group: &Value) -> Vec<PglMap> {
    group["elements"]
        .as_array()
        .expect("elements listed")
        .iter()
        .map(|m| {
            let e = |r: usize, c: usize| element_from_json(field, &m[r][c]).unwrap();
            PglMap::canonicalize([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]).unwrap()
        })
        .collect()
}

#[test]
fn analyze_klein() {
    let v = json(&["analyze", "--builtin", "klein"]);
    let g = &v["components"][0]["group"];
    assert_eq!(g["label"], "S4");
    assert_eq!(g["order"], 24);
    assert_eq!(v["simple_morphisms"], 720);
    assert_eq!(v["auxiliary_counts"]["8"], 90);
    assert_eq!(v["marked_invariance"]["holds"], true);
}

#[test]
fn analyze_quadric_is_trivial() {
    let v = json(&["analyze", "--builtin", "quadric4"]);
    assert_eq!(v["components"][0]["group"]["label"], "Trivial");
    let text = String::from_utf8(skewline(&["analyze", "--builtin", "quadric4"]).stdout).unwrap();
    assert!(text.contains("Trivial"));
}

#[test]
fn analyze_p4_is_infinite_with_cap_echoed() {
    let v = json(&["analyze", "--builtin", "p4_25", "--cap", "80"]);
    let g = &v["components"][0]["group"];
    assert_eq!(g["label"], "Infinite");
    assert_eq!(g["order"], Value::Null);
    assert_eq!(g["cap"], 80);
}

#[test]
fn analyze_respects_base() {
    let v = json(&["analyze", "--builtin", "d4", "--base", "5"]);
    assert_eq!(v["components"][0]["base"], 5);
    assert_eq!(v["components"][0]["group"]["alias"], "S3");
}

#[test]
fn orbit_sizes() {
    for (name, point, size) in [("klein", "1,0", 60), ("penrose_half", "1,0", 20), ("penrose", "1,1", 80)] {
        let v = json(&["orbit", "--builtin", name, "--line", "0", "--point", point]);
        assert_eq!(v["count"], size, "{name}");
        assert_eq!(v["truncated"], false);
        let listed: usize = v["members"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| m["points"].as_array().unwrap().len())
            .sum();
        assert_eq!(listed, size);
    }
}

#[test]
fn orbit_cap_truncates() {
    let v = json(&["orbit", "--builtin", "klein", "--line", "0", "--point", "1,0", "--cap", "10"]);
    assert_eq!(v["count"], 10);
    assert_eq!(v["truncated"], true);
}

#[test]
fn named_stabilizers() {
    for (set, order, label) in [("X", 12, "A4"), ("Y", 12, "A4"), ("E", 24, "S4"), ("Ytilde", 24, "S4"), ("Xtilde", 24, "S4")] {
        let v = json(&["stabilizer", "--set", set]);
        assert_eq!(v["group"]["order"], order, "{set}");
        assert_eq!(v["group"]["label"], label, "{set}");
    }
}

#[test]
fn stabilizer_json_round_trips() {
    let v = json(&["stabilizer", "--set", "Ytilde"]);
    let field = FieldDescriptor::eisenstein();
    let printed = matrices(&field, &v["group"]);
    let expected = stabilizer(&MarkedParameterSets::y_tilde()).unwrap().elements;
    assert_eq!(printed, expected);
}

#[test]
fn inline_and_file_points() {
    let inline = json(&["stabilizer", "--points", "1,0; 0,1; t,1; -t^2,1"]);
    assert_eq!(inline["group"]["label"], "A4");
    let path = temp_file("points.txt", "# Klein parameters\n1,0\n0,1\n1,1\n-1,1\ni,1\n-i,1\n");
    let from_file = json(&["stabilizer", "--field", "gaussian", "--points", path.to_str().unwrap()]);
    assert_eq!(from_file["group"]["label"], "S4");
    let custom = json(&["stabilizer", "--field", "1,0,1", "--points", "1,0;0,1;1,1"]);
    assert_eq!(custom["group"]["order"], 6);
}

#[test]
fn config_file_analysis() {
    let path = temp_file("klein.json", &emit_config(&builtin(BuiltinName::Klein).unwrap()));
    let v = json(&["analyze", "--config", path.to_str().unwrap()]);
    assert_eq!(v["components"][0]["group"]["label"], "S4");
    let field = FieldDescriptor::gaussian();
    assert_eq!(matrices(&field, &v["components"][0]["group"]).len(), 24);
}

#[test]
fn verify_subset_passes() {
    let v = json(&["verify", "--only", "4,5,13", "--instances", "5"]);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 3);
    for c in v["criteria"].as_array().unwrap() {
        for key in ["id", "name", "passed", "expected", "actual"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn verify_detects_corruption() {
    let out = skewline(&["verify", "--corrupt", "quadric4", "--only", "4,5"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[FAIL]  4."));
    assert!(text.contains("[PASS]  5."));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&[]), 2);
    assert_eq!(code(&["analyze"]), 2);
    assert_eq!(code(&["analyze", "--builtin", "klein", "--config", "x.json"]), 2);
    assert_eq!(code(&["analyze", "--builtin", "nonesuch"]), 2);
    let bad = temp_file("bad.json", "{\"field\": {\"min_poly\": [0, 1]}, \"lines\": [");
    assert_eq!(code(&["analyze", "--config", bad.to_str().unwrap()]), 3);
    assert_eq!(code(&["analyze", "--config", "/nonexistent/config.json"]), 3);
    assert_eq!(code(&["orbit", "--builtin", "klein", "--line", "0", "--point", "1,x"]), 3);
    assert_eq!(code(&["orbit", "--builtin", "klein", "--line", "99", "--point", "1,0"]), 4);
    assert_eq!(code(&["analyze", "--builtin", "klein", "--base", "10"]), 4);
    assert_eq!(code(&["stabilizer", "--points", "1,0;0,1"]), 4);
    assert_eq!(code(&["stabilizer", "--field", "bogus", "--points", "1,0;0,1;1,1"]), 3);
}
