use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use symtrack::nilgroup::PointedSet;
use symtrack::quadratic::{qpm_nil, Part};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    root().join("data").join(name).display().to_string()
}

fn symtrack(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_symtrack")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(root().join("schema/report.schema.json")).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

/// Runs with `--json`, validates against the shipped schema and checks the
/// exit code against the statuses.
fn json_report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = symtrack(&full);
    assert!(err.is_empty(), "{args:?}: {err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    if let Err(errors) = schema().validate(&v) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("{args:?} does not match the schema: {msgs:?}");
    }
    let any_fail = v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "fail");
    assert_eq!(code, i32::from(any_fail), "{args:?}");
    (code, v)
}

#[test]
fn documented_outputs() {
    assert_eq!(symtrack(&["pin", "lemma-a", "--k", "2"]), (0, "tau_hat^2 = -1 = omega^1: PASS\n".into(), String::new()));
    assert_eq!(symtrack(&["pin", "lemma-a", "--k", "4"]).1, "tau_hat^2 = 1 = omega^6: PASS\n");
    assert_eq!(symtrack(&["pin", "split", "--n", "4"]).1, "non-split: 8/8 candidate sections fail\n");
    assert_eq!(symtrack(&["pin", "split", "--n", "3"]).1, "split: s(sigma_i) = +t1, +t2\n");
    assert_eq!(symtrack(&["pin", "order", "--n", "3"]).1, "12 = 2*3!\n");
    assert_eq!(symtrack(&["pin", "relations", "--n", "4"]).1, "10/10 relations hold\n");
}

#[test]
fn clifford_eval_and_delta() {
    let eval = |args: &[&str]| symtrack(&[&["clifford", "eval"], args].concat()).1;
    assert_eq!(eval(&["(1/2) (e1-e2) (e1-e2)"]), "1\n");
    assert_eq!(eval(&["--dim", "3", "e1 e2 e3 e1"]), "e2 e3\n");
    assert_eq!(eval(&["t1 t2 t1 - t2 t1 t2"]), "0\n");
    assert_eq!(eval(&["sqrt2 sqrt2 + 1/3"]), "7/3\n");
    let delta = |args: &[&str]| symtrack(&[&["pin", "delta"], args].concat()).1;
    assert_eq!(delta(&["--dim", "4", "t1 t3 t1 t3"]), "()\n");
    assert_eq!(delta(&["t1 t2"]), "(1 2 3)\n");
    assert_eq!(delta(&["w t3"]), "(3 4)\n");
    assert_eq!(delta(&["e1 + e2"]), "NOT-MEMBER\n");
    assert_eq!(delta(&["(1/2) (1 + e1 e2)"]), "NOT-MEMBER\n");
}

#[test]
fn exit_codes() {
    let (code, _, err) = symtrack(&["clifford", "eval", "e1 + (e2"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 9"), "{err}");
    let (code, _, err) = symtrack(&["clifford", "eval", "--dim", "2", "e1 e3"]);
    assert_eq!(code, 2);
    assert!(err.contains("column 4"), "{err}");
    assert_eq!(symtrack(&["pin", "order"]).0, 2);
    assert_eq!(symtrack(&["pin", "order", "--n", "9"]).0, 2);
    assert_eq!(symtrack(&["qpm", "validate", "--file", "/nonexistent.json"]).0, 2);
    assert_eq!(symtrack(&["frobnicate"]).0, 2);
    assert_eq!(symtrack(&["--help"]).0, 0);

    let (code, out, _) = symtrack(&["actions", "check", "--which", "sym-track-cm", "--n", "2", "--formula", "literal"]);
    assert_eq!(code, 1);
    assert!(out.lines().any(|l| l.starts_with("FAIL  (2)")), "{out}");
}

#[test]
fn reports_match_schema_and_exit_codes() {
    let eta = data("eta.json");
    let nil = data("nil_ab.json");
    let z = data("z_nil.json");
    let pres = data("sym_track_4.pres");
    let runs: Vec<Vec<&str>> = vec![
        vec!["pin", "order", "--n", "4"],
        vec!["pin", "relations", "--n", "5"],
        vec!["pin", "lemma-a", "--k", "3"],
        vec!["pin", "split", "--n", "5"],
        vec!["clifford", "eval", "t1 t2"],
        vec!["present", "tc", "--file", &pres],
        vec!["present", "tc", "--file", &pres, "--max", "10"],
        vec!["qpm", "validate", "--file", &eta],
        vec!["qpm", "validate", "--file", &nil],
        vec!["qpm", "validate", "--file", &z],
        vec!["qpm", "nstar", "--file", &nil, "--n", "-1", "--elem", "a + b"],
        vec!["actions", "check", "--which", "trivial-action"],
        vec!["actions", "check", "--which", "sym-track-cm", "--n", "3"],
        vec!["actions", "check", "--which", "sym-track-cm", "--n", "3", "--formula", "literal"],
        vec!["actions", "check", "--which", "m-of-partial", "--n", "2"],
    ];
    for args in &runs {
        json_report(args);
    }
    let (code, v) = json_report(&["present", "tc", "--file", &pres, "--max", "10"]);
    assert_eq!(code, 1);
    assert!(v["checks"][0]["witness"].as_str().unwrap().contains("10"));
    let (_, v) = json_report(&["present", "tc", "--file", &pres]);
    assert!(v["summary"].as_str().unwrap().starts_with("order 48 "));
}

#[test]
fn nstar_matches_the_closed_form() {
    // (-1)*(a + b) = -(a + b) + ∂P H(a + b), and H(a + b) = (a|b)_H = b.a.
    let c = qpm_nil(&PointedSet::new(["a", "b"]).unwrap());
    let want = c.show(Part::C0, &c.c0.parse("-(a + b) + [a, b]").unwrap());
    let (code, out, _) = symtrack(&["qpm", "nstar", "--file", &data("nil_ab.json"), "--n", "-1", "--elem", "a + b"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), want);
    let (_, out, _) = symtrack(&["qpm", "nstar", "--file", &data("eta.json"), "--n", "2", "--elem", "e"]);
    assert_eq!(out.trim(), "2e");
    let (_, out, _) = symtrack(&["qpm", "nstar", "--file", &data("z_nil.json"), "--n", "3", "--elem", "x"]);
    assert_eq!(out.trim(), "3x");
}

#[test]
fn runs_are_deterministic() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    for args in [
        vec!["actions", "check", "--which", "trivial-action"],
        vec!["pin", "split", "--n", "4"],
        vec!["qpm", "validate", "--file", &data("nil_ab.json")],
    ] {
        let a = strip(json_report(&args).1);
        let b = strip(json_report(&args).1);
        assert_eq!(a, b);
    }
}
