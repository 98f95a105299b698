use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use zkcoh::equivariant::verify_annihilation;
use zkcoh::format::parse_json;
use zkcoh::{KoszulAlgebra, Model, SimplicialComplex};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn zk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zk")).args(args).output().expect("zk runs")
}

fn stdout(args: &[&str]) -> String {
    let out = zk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&args)).unwrap()
}

/// Parses a reported witness back and replays it through the library.
fn replay_witness(k: &SimplicialComplex, torus: &Value, cert: &Value) {
    let labels: Vec<&str> = torus.as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect();
    let torus = k.subset_of_labels(&labels).unwrap();
    let alg = KoszulAlgebra::new(k, torus, Model::Reduced).unwrap();
    let rep = alg.parse_cochain(cert["representative"].as_str().unwrap()).unwrap();
    let ann = alg.parse_monomial(cert["annihilator"].as_str().unwrap()).unwrap();
    verify_annihilation(k, torus, &rep, &ann).unwrap();
}

#[test]
fn pentagon_cohomology_table() {
    let out = stdout(&["cohomology", "--input", &fixture("pentagon.sc"), "--torus", "5", "--max-degree", "12"]);
    let h3 = out.lines().find(|l| l.starts_with("3 ")).unwrap();
    assert!(h3.contains("u4*v2"), "{h3}");
    assert!(out.contains(
        "as a module over Z[v5]: NOT_FREE  witness: class [u4*v2], annihilator v5, via missing-face pair (I1={2,5}, I2={2,4})"
    ));
}

#[test]
fn pentagon_cohomology_json_schema() {
    let v = json(&["cohomology", "-i", &fixture("pentagon.sc"), "-t", "5", "-d", "12"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["complex", "torus_subset", "truncation", "coefficients", "results", "verdict"]);
    assert_eq!(v["torus_subset"], serde_json::json!(["5"]));
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 13);
    assert_eq!(results[3]["rank"], 5);
    assert!(results[3]["representatives"].as_array().unwrap().iter().any(|r| r == "u4*v2"));
    assert_eq!(v["verdict"]["status"], "NOT_FREE");
    assert_eq!(v["verdict"]["certificate"]["via"], "missing-face pair");
    let k = parse_json(&v["complex"].to_string()).unwrap();
    replay_witness(&k, &v["torus_subset"], &v["verdict"]["certificate"]);
}

#[test]
fn json_is_byte_deterministic() {
    let args = ["cohomology", "-i", &fixture("hexagon.sc"), "-t", "1,4", "--multidegrees", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn formality_single_face() {
    let out = stdout(&["formality", "-i", &fixture("pentagon.sc"), "-t", "5"]);
    assert_eq!(out, "NOT_FREE  witness: class [u4*v2], annihilator v5, via missing-face pair (I1={2,5}, I2={2,4})\n");
}

#[test]
fn square_survey_is_free() {
    let out = stdout(&["formality", "-i", &fixture("square.sc"), "--survey"]);
    assert_eq!(out.lines().filter(|l| l.contains("FREE  ∂Δ({1,3}) * ∂Δ({2,4})")).count(), 9);
    let v = json(&["formality", "-i", &fixture("square.sc"), "--survey"]);
    assert_eq!(v["all_free"], true);
    assert_eq!(v["decomposition"], "∂Δ({1,3}) * ∂Δ({2,4})");
}

#[test]
fn survey_witnesses_round_trip() {
    for name in ["pentagon.sc", "hexagon.sc", "wedge.sc"] {
        let v = json(&["formality", "-i", &fixture(name), "--survey"]);
        let k = parse_json(&v["complex"].to_string()).unwrap();
        let mut witnesses = 0;
        for entry in v["verdicts"].as_array().unwrap() {
            if entry["certificate"]["kind"] == "witness" {
                assert_eq!(entry["status"], "NOT_FREE");
                replay_witness(&k, &entry["torus_subset"], &entry["certificate"]);
                witnesses += 1;
            }
        }
        assert!(witnesses > 0, "{name}");
    }
}

#[test]
fn classify_examples() {
    let hexagon = stdout(&["classify", "-i", &fixture("hexagon.sc")]);
    assert!(hexagon.contains("flag: yes"));
    assert!(hexagon.contains("decomposable: no"));
    assert!(hexagon.contains("obstruction pair: I1={1,3}, I2={1,4}"));
    assert_eq!(json(&["classify", "-i", &fixture("path3.sc")])["graph_class"], "∂Δ¹ ∗ Δ⁰");
    assert_eq!(json(&["classify", "-i", &fixture("triangle.sc")])["graph_class"], "∂Δ²");
    let evidence = json(&["classify", "-i", &fixture("hexagon.sc"), "--evidence"]);
    assert_eq!(evidence["evidence"]["agrees"], true);
    assert_eq!(evidence["evidence"]["condition"], false);
}

#[test]
fn torus_endpoints() {
    let ranks = |v: &Value| -> Vec<u64> { v["results"].as_array().unwrap().iter().map(|r| r["rank"].as_u64().unwrap()).collect() };
    let all = json(&["cohomology", "-i", &fixture("triangle.sc"), "-t", "all", "-d", "8"]);
    assert_eq!(ranks(&all), [1, 0, 3, 0, 6, 0, 9, 0, 12]);
    let none = json(&["cohomology", "-i", &fixture("pentagon.sc"), "-t", "none", "-d", "8"]);
    assert_eq!(ranks(&none), [1, 0, 0, 5, 5, 0, 0, 1, 0]);
    assert_eq!(none["verdict"]["status"], "UNDETERMINED");
}

#[test]
fn rational_mode_drops_torsion() {
    let v = json(&["cohomology", "-i", &fixture("rp2.sc"), "-d", "10", "--coefficients", "rational"]);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["torsion"].as_array().unwrap().is_empty()));
    let v = json(&["cohomology", "-i", &fixture("rp2.sc"), "-d", "10"]);
    assert!(v["results"].as_array().unwrap().iter().any(|r| r["torsion"] == serde_json::json!([2])));
    assert_eq!(v["verdict"]["certificate"]["kind"], "integral-torsion");
}

#[test]
fn inline_complex_and_multidegrees() {
    let v = json(&["cohomology", "--complex", "1 2\n2 3\n3 1\n", "-t", "1", "-d", "4", "--multidegrees"]);
    let parts = v["results"][2]["multidegrees"].as_array().unwrap();
    assert!(parts.iter().all(|p| p["multidegree"].as_array().unwrap().len() == 3));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| zk(args).status.code().unwrap();
    let bad = std::env::temp_dir().join(format!("zk-bad-{}.sc", std::process::id()));
    std::fs::write(&bad, "1 2\n2 3 3\n").unwrap();
    let out = zk(&["classify", "-i", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_file(bad).unwrap();

    let pentagon = fixture("pentagon.sc");
    assert_eq!(code(&["cohomology", "-i", &pentagon, "-t", "7"]), 1);
    assert_eq!(code(&["cohomology", "-i", "/nonexistent/complex.sc"]), 1);
    assert_eq!(code(&["cohomology", "--bogus"]), 1);
    assert_eq!(code(&["cohomology", "-i", &pentagon, "-d", "1000"]), 2);
    assert_eq!(code(&["cohomology", "-i", &pentagon, "--max-representatives", "3"]), 2);
    assert_eq!(code(&["formality", "-i", &pentagon, "-t", "1,3"]), 0);
}
