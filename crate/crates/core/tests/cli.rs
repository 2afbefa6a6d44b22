//! Command-line surface: golden reports for the corpus, exit codes, the
//! degree-bound override, parity of text and JSON output, and round-trips
//! of printed generators. Tests whose name contains `slow` involve the
//! transverse-structure example.

use std::path::PathBuf;
use std::process::Command;

use folcalc_core::cli::parse::{parse_polynomial, Vars};
use folcalc_core::cli::{run, Outcome};
use folcalc_core::Ideal;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn folcalc(args: &[&str]) -> Outcome {
    run(std::iter::once("folcalc").chain(args.iter().copied()))
}

fn json_of(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("invalid JSON ({e}): {}", out.stdout))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// `report` on the input fixture reproduces the golden report, timings aside.
fn check_golden(name: &str) {
    let input = fixture(&format!("{name}.txt"));
    let out = folcalc(&["--format", "json", "report", input.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{name}: {}", out.stderr);
    let mut got = json_of(&out);
    let timings = got.as_object_mut().unwrap().remove("timings_ms").expect("timings reported");
    assert!(["J", "K", "L", "I", "predicates"].iter().all(|k| timings[k].is_number()));
    let expected: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture(&format!("{name}.report.json"))).unwrap()).unwrap();
    assert_eq!(got, expected, "{name}: report differs from the golden file");
}

#[test]
fn golden_reports() {
    for name in ["p2a", "p2a_xyz", "p2b", "p2c", "dulac", "sl2"] {
        check_golden(name);
    }
}

#[test]
fn slow_golden_transverse_report() {
    check_golden("transverse");
}

#[test]
fn example_command_matches_the_fixture_documents() {
    for name in ["p2a", "p2b", "p2c", "dulac", "sl2", "transverse"] {
        let out = folcalc(&["example", name, "--input-only"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, std::fs::read_to_string(fixture(&format!("{name}.txt"))).unwrap(), "{name}");
    }
}

#[test]
fn report_on_last_plane_example_has_canonical_kupka_ideal() {
    let out = folcalc(&["--format", "json", "report", fixture("p2c.txt").to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let v = json_of(&out);
    assert_eq!(v["ideals"]["K"], serde_json::json!(["x2", "x0*x1"]));
    assert_eq!(v["schema"], "folcalc-report/1");
    assert_eq!(v["predicates"]["K_comaximal_with_CdOmega"], false);
    assert_eq!(v["predicates"]["kupka_nonempty"], true);
}

#[test]
fn hilbert_of_sl2_quotients() {
    let out = folcalc(&["hilbert", "--of", "I/J", fixture("sl2.txt").to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "4*P2 - 11*P1 + 10*P0");
    let out = folcalc(&["hilbert", "--of", "S/L", fixture("sl2.txt").to_str().unwrap()]);
    assert_eq!(out.stdout.trim(), "4*P2 - 3*P1");
    let out = folcalc(&["--format", "json", "hilbert", "--of", "I/J", fixture("sl2.txt").to_str().unwrap()]);
    let v = json_of(&out);
    assert_eq!(v["of"], "I/J");
    assert_eq!(v["coefficients"], serde_json::json!({"P2": 4, "P1": -11, "P0": 10}));
}

#[test]
fn non_integrable_form_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "bad.txt", "vars: x0 x1 x2 x3\nomega: x1*dx0 - x0*dx1 + x3*dx2 - x2*dx3\n");
    let out = folcalc(&["check", &f]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("integrability"), "{}", out.stderr);
    let v = json_of(&folcalc(&["--format", "json", "check", &f]));
    assert_eq!(v["valid"], false);
    assert_eq!(v["invariant"], "integrability");
    // Other invariants are named the same way.
    for (text, invariant) in [
        ("vars: x y z\nomega: x*dx + y*dy + z*dz\n", "radial"),
        ("vars: x y z\nomega: x*(y*dx - x*dy)\n", "codimension"),
        ("vars: x y z\nomega: y*dx - x^2*dy\n", "homogeneity"),
        ("vars: x y z\nomega: 0*dx\n", "nonzero"),
    ] {
        let g = write_temp(&dir, "g.txt", text);
        let v = json_of(&folcalc(&["--format", "json", "check", &g]));
        assert_eq!(v["invariant"], invariant, "{text}");
    }
}

#[test]
fn check_accepts_valid_documents() {
    let out = folcalc(&["--format", "json", "check", fixture("p2a_xyz.txt").to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let v = json_of(&out);
    assert_eq!((v["valid"].clone(), v["n"].clone(), v["e"].clone()), (Value::Bool(true), 2.into(), 4.into()));
}

#[test]
fn input_errors_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let trailing = write_temp(&dir, "t.txt", "vars: x0 x1 x2\nomega: x0*dx0 +\n");
    let out = folcalc(&["check", &trailing]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("omega"), "{}", out.stderr);
    let unknown = write_temp(&dir, "u.txt", "vars: x0 x1 x2\nomega: w*dx0\n");
    assert_eq!(folcalc(&["check", &unknown]).code, 1);
    let mixed = write_temp(&dir, "m.txt", "vars: x y z\nomega: x1*dx\n");
    assert_eq!(folcalc(&["check", &mixed]).code, 1);
    assert_eq!(folcalc(&["check", "/nonexistent/file.txt"]).code, 1);
    assert_eq!(folcalc(&["ideal", "--which", "Q", &trailing]).code, 1);
    assert_eq!(folcalc(&["frobnicate"]).code, 1);
    // JSON input documents are accepted too.
    let j = write_temp(&dir, "j.json", r#"{"vars": ["x0","x1","x2"], "omega": "x1*x2*dx0 + x0*x2*dx1 - 2*x0*x1*dx2"}"#);
    assert_eq!(folcalc(&["check", &j]).code, 0);
}

#[test]
fn degree_bound_below_the_twist_is_a_usage_error() {
    let p = fixture("sl2.txt");
    let out = folcalc(&["--format", "json", "ideal", "--which", "I", p.to_str().unwrap(), "--max-degree", "4"]);
    assert_eq!(out.code, 1, "{}", out.stderr);
    assert_eq!(json_of(&out)["error"], "input");
    // d_max = e is enough for the sl2 example: the result agrees with the default 2e.
    let tight = folcalc(&["--format", "json", "ideal", "--which", "I", p.to_str().unwrap(), "--max-degree", "5"]);
    assert_eq!(tight.code, 0, "{}", tight.stderr);
    let default = folcalc(&["--format", "json", "ideal", "--which", "I", p.to_str().unwrap()]);
    assert_eq!(json_of(&tight), json_of(&default));
}

#[test]
fn text_and_json_carry_identical_ideal_data() {
    for name in ["p2a", "p2b", "p2c", "dulac", "sl2"] {
        let p = fixture(&format!("{name}.txt"));
        let v = json_of(&folcalc(&["--format", "json", "report", p.to_str().unwrap()]));
        let text = folcalc(&["report", p.to_str().unwrap()]).stdout;
        let mut in_ideals = false;
        let mut seen = 0;
        for line in text.lines() {
            if line == "ideals:" {
                in_ideals = true;
                continue;
            }
            if in_ideals {
                let Some(rest) = line.strip_prefix("  ") else { break };
                let (key, gens) = rest.split_once(": ").unwrap();
                let gens: Value = serde_json::from_str(gens).unwrap();
                assert_eq!(gens, v["ideals"][key], "{name} {key}");
                seen += 1;
            }
        }
        assert_eq!(seen, 5, "{name}");
        for which in ["J", "I", "K", "L", "CdOmega"] {
            let t = folcalc(&["ideal", "--which", which, p.to_str().unwrap()]).stdout;
            let line = t.lines().find_map(|l| l.strip_prefix("generators: ")).unwrap();
            assert_eq!(serde_json::from_str::<Value>(line).unwrap(), v["ideals"][which], "{name} {which}");
        }
    }
}

#[test]
fn printed_generators_round_trip() {
    for name in ["p2a", "p2a_xyz", "p2b", "p2c", "dulac", "sl2"] {
        let v: Value =
            serde_json::from_str(&std::fs::read_to_string(fixture(&format!("{name}.report.json"))).unwrap()).unwrap();
        let names: Vec<String> = v["input"]["vars"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().into()).collect();
        let vars = Vars::new(&names).unwrap();
        for (key, gens) in v["ideals"].as_object().unwrap() {
            let strings: Vec<&str> = gens.as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
            let polys: Vec<_> = strings.iter().map(|g| parse_polynomial(g, &vars).unwrap()).collect();
            // parse ∘ print is the identity, and the printed set is already canonical.
            for (g, p) in strings.iter().zip(&polys) {
                assert_eq!(p.display_with(&names).to_string(), *g, "{name} {key}");
            }
            let ideal = Ideal::new(names.len(), polys);
            assert_eq!(ideal.canonical_strings_with(&names), strings, "{name} {key}");
        }
    }
}

#[test]
fn pullback_by_a_map_through_a_non_kupka_point() {
    let map = fixture("linear_map.txt");
    let form = fixture("p2c.txt");
    let out = folcalc(&["--format", "json", "pullback", "--map", map.to_str().unwrap(), "--form", form.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json_of(&out);
    // The last plane example has a non-Kupka point, so genericity fails and
    // I is strictly larger than the ideal of the pulled-back coefficients.
    assert_eq!(v["genericity"]["label"], "unverified");
    assert_eq!(v["genericity"]["all_kupka"], false);
    assert_eq!(v["I_equals_prediction"], false);
    assert_eq!(v["I"], serde_json::json!(["x2 + 2*x3", "x0*x1 - x0*x3 + x1*x3 - x3^2"]));
}

#[test]
fn batch_is_reproducible() {
    let a = folcalc(&["--format", "json", "batch", "--family", "plane", "--count", "4", "--seed", "9"]);
    let b = folcalc(&["--format", "json", "batch", "--family", "plane", "--count", "4", "--seed", "9"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["in_U"], 4);
    assert!(v["members"].as_array().unwrap().iter().all(|m| m["I_equals_K"] == true));
    assert_eq!(folcalc(&["batch", "--family", "cubic"]).code, 1);
}

fn binary() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_folcalc"));
    c.env_remove("FOLCALC_MAX_DEGREE");
    c
}

#[test]
fn binary_exit_codes_and_degree_override() {
    let p = fixture("sl2.txt");
    let p = p.to_str().unwrap();
    let ok = binary().args(["ideal", "--which", "I", p]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    // The environment variable replaces the default bound 2e …
    let env_low = binary().env("FOLCALC_MAX_DEGREE", "3").args(["ideal", "--which", "I", p]).output().unwrap();
    assert_eq!(env_low.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&env_low.stderr).contains("d_max"));
    // … and the flag takes precedence over the environment.
    let flag = binary()
        .env("FOLCALC_MAX_DEGREE", "3")
        .args(["ideal", "--which", "I", p, "--max-degree", "10"])
        .output()
        .unwrap();
    assert_eq!(flag.status.code(), Some(0));
    assert_eq!(flag.stdout, ok.stdout);
    let junk = binary().env("FOLCALC_MAX_DEGREE", "many").args(["ideal", "--which", "I", p]).output().unwrap();
    assert_eq!(junk.status.code(), Some(1));
    let rejected = binary()
        .args(["check", fixture("p2c.txt").to_str().unwrap()])
        .env("FOLCALC_MAX_DEGREE", "1")
        .output()
        .unwrap();
    assert_eq!(rejected.status.code(), Some(0), "check does not assemble I");
    let version = binary().arg("--version").output().unwrap();
    assert_eq!(version.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&version.stdout).contains(env!("CARGO_PKG_VERSION")));
}
