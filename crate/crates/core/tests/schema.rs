//! JSON output of every subcommand validates against `report.schema.json`.

use std::path::PathBuf;

use folcalc_core::cli::json::SCHEMA_VERSION;
use folcalc_core::cli::run;
use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_str().unwrap().to_string()
}

fn schema() -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// The schema rooted at `#/$defs/{def}`, or at the report itself for `None`.
fn validator(def: Option<&str>) -> jsonschema::Validator {
    let mut s = schema();
    if let Some(d) = def {
        let obj = s.as_object_mut().unwrap();
        obj.retain(|k, _| k == "$schema" || k == "$defs");
        obj.insert("$ref".into(), json!(format!("#/$defs/{d}")));
    }
    jsonschema::validator_for(&s).expect("a valid schema")
}

fn assert_valid(def: Option<&str>, v: &Value) {
    let val = validator(def);
    let errors: Vec<String> = val.iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{def:?}: {errors:#?}\n{v:#}");
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let out = run(["folcalc", "--format", "json"].into_iter().chain(args.iter().copied()));
    (out.code, serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout)))
}

#[test]
fn schema_version_matches_the_crate() {
    assert_eq!(schema()["properties"]["schema"]["const"], SCHEMA_VERSION);
}

#[test]
fn reports_validate() {
    for name in ["p2a", "p2a_xyz", "p2b", "p2c", "dulac", "sl2"] {
        let (code, v) = json_run(&["report", &fixture(&format!("{name}.txt"))]);
        assert_eq!(code, 0);
        assert_valid(None, &v);
    }
    let (_, v) = json_run(&["example", "dulac", "--p", "1", "--q", "2"]);
    assert_valid(None, &v);
}

#[test]
fn reports_with_extra_or_missing_fields_are_invalid() {
    let (_, mut v) = json_run(&["report", &fixture("p2c.txt")]);
    let val = validator(None);
    assert!(val.is_valid(&v));
    v["predicates"]["in_U"] = json!("yes");
    assert!(!val.is_valid(&v));
    v["predicates"]["in_U"] = json!(true);
    v.as_object_mut().unwrap().remove("timings_ms");
    assert!(!val.is_valid(&v));
}

#[test]
fn subcommand_outputs_validate() {
    let p2c = fixture("p2c.txt");
    assert_valid(Some("check"), &json_run(&["check", &p2c]).1);
    for which in ["J", "I", "K", "L", "CdOmega"] {
        assert_valid(Some("ideal_output"), &json_run(&["ideal", "--which", which, &p2c]).1);
    }
    for of in ["I/J", "S/L"] {
        assert_valid(Some("hilbert_output"), &json_run(&["hilbert", "--of", of, &fixture("sl2.txt")]).1);
    }
    let (code, v) = json_run(&["pullback", "--map", &fixture("linear_map.txt"), "--form", &p2c]);
    assert_eq!(code, 0);
    assert_valid(Some("pullback_output"), &v);
    for family in ["plane", "rational", "pullback"] {
        let (code, v) = json_run(&["batch", "--family", family, "--count", "2", "--seed", "3"]);
        assert_eq!(code, 0);
        assert_valid(Some("batch_output"), &v);
    }
}

#[test]
fn failure_outputs_validate() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "vars: x0 x1 x2 x3\nomega: x1*dx0 - x0*dx1 + x3*dx2 - x2*dx3\n").unwrap();
    let (code, v) = json_run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_valid(Some("rejection"), &v);
    let (code, v) = json_run(&["ideal", "--which", "I", &fixture("sl2.txt"), "--max-degree", "2"]);
    assert_eq!(code, 1);
    assert_valid(Some("input_error"), &v);
    let (code, v) = json_run(&["check", "/nonexistent.txt"]);
    assert_eq!(code, 1);
    assert_valid(Some("input_error"), &v);
    let stabilization = json!({"error": "stabilization", "message": "new generators in degree 9", "degree": 9});
    assert_valid(Some("stabilization_error"), &stabilization);
}
