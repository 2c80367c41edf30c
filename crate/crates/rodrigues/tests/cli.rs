use std::path::PathBuf;
use std::process::{Command, Output};

use rodrigues::json::{ode_from_json, poly_from_json, OdeJson, PolyJson};
use rodrigues_core::kernel::PolyFamily;
use rodrigues_core::ode::synthesize_ode;
use rodrigues_core::FamilySpec;
use serde_json::Value;

fn family(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "families", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rodrigues")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rodrigues-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn compute_hermite_kernels() {
    let o = run(&["compute", "--family", &family("hermite.json"), "--n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("q_1 = -2*Lb*x"), "{text}");
    assert!(text.contains("q_3 = -8*Lb^3*x^3 + 12*Lb^2*x"), "{text}");
}

#[test]
fn compute_n_zero_is_psi() {
    let o = run(&["compute", "--family", &family("psi-not-one.json"), "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q_0 = x + 1");
}

#[test]
fn compute_json_round_trips() {
    let o = run(&["--format", "json", "compute", "--family", &family("x4.json"), "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = PolyFamily::from_spec(&FamilySpec::quartic()).unwrap().kernels(4);
    for (k, row) in v["kernels"].as_array().unwrap().iter().enumerate() {
        let p: PolyJson = serde_json::from_value(row["poly"].clone()).unwrap();
        assert_eq!(poly_from_json(&p).unwrap(), expected[k]);
    }
}

#[test]
fn compute_numeric_hermite() {
    let o = run(&["--format", "csv", "compute", "--family", &family("hermite.json"), "--n", "3", "--numeric", "--points", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let v: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
    // Θ_3(x) = −8x³ + 12x at α = β = e
    assert!((v - 5.0).abs() < 1e-12, "{last}");
}

#[test]
fn numeric_mode_needs_numeric_parameters() {
    let o = run(&["compute", "--family", &family("hermite-symbolic.json"), "--numeric"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two() {
    let bad = temp_file("bad.json", "{\"phi1\": ");
    let o = run(&["compute", "--family", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed family spec"), "{}", stderr(&o));

    let unknown = temp_file("unknown.json", r#"{"phi1": {"poly": [1]}, "phi2": {"poly": [1]}, "psi": {"poly": [1]}, "gamma": 1}"#);
    assert_eq!(run(&["compute", "--family", unknown.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--family", "/nonexistent/family.json"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense", "--family", &family("hermite.json")]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--bogus-flag"]).status.code(), Some(2));
}

#[test]
fn verify_hermite_all() {
    let o = run(&["verify", "--family", &family("hermite.json"), "--suite", "all", "--n-max", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    for id in ["genfun", "aa9", "aa10", "cor21", "thm23", "aa11", "cor22", "ode2", "ode-printed-hermite"] {
        assert!(text.contains(id), "{id} missing from\n{text}");
    }
}

#[test]
fn verify_quartic_ode_against_printed_example() {
    let o = run(&["verify", "--suite", "ode", "--m", "4", "--family", &family("x4.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("y^(3) coefficient matches: 12*x^3"), "{text}");
    assert!(text.contains("y^(2) coefficient matches: 48*x^6 + (-12*n + 36)*x^2"), "{text}");
}

#[test]
fn cor22_requires_unit_psi() {
    let o = run(&["verify", "--suite", "cor22", "--family", &family("psi-not-one.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("requires psi = 1"));
}

#[test]
fn random_verification_reports_seed() {
    let o = run(&["--format", "json", "verify", "--suite", "aa9", "--seed", "42", "--count", "3", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        assert_eq!(r["seed"], 42);
        assert_eq!(r["status"], "verified");
        assert_eq!(r["identity"], "aa9");
        assert!(r["first_failure"].is_null());
    }
    let again = run(&["--format", "json", "verify", "--suite", "aa9", "--seed", "42", "--count", "3", "--n-max", "6"]);
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn n_max_guard() {
    let o = run(&["verify", "--family", &family("hermite.json"), "--suite", "thm23", "--n-max", "65"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--allow-large", "verify", "--family", &family("hermite.json"), "--suite", "thm23", "--n-max", "65"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn violated_identity_exits_one() {
    let o = run(&["--format", "json", "ode", "--family", &family("x4.json")]);
    let good = temp_file("x4-ode.json", &stdout(&o));
    let o = run(&["verify", "--family", &family("x4.json"), "--ode", good.to_str().unwrap(), "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let mut j: OdeJson = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let term = j.coeffs[1].poly.iter_mut().find(|c| !c.is_empty()).unwrap();
    term[0].coef = "7".into();
    let bad = temp_file("x4-ode-bad.json", &serde_json::to_string(&j).unwrap());
    let o = run(&["verify", "--family", &family("x4.json"), "--ode", bad.to_str().unwrap(), "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("ode4") && stdout(&o).contains("failed"), "{}", stdout(&o));
}

#[test]
fn degree_mismatch_is_an_input_error() {
    let o = run(&["verify", "--suite", "ode", "--m", "3", "--family", &family("hermite.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ode_json_round_trips() {
    let o = run(&["--format", "json", "ode", "--family", &family("x4.json")]);
    assert_eq!(o.status.code(), Some(0));
    let j: OdeJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j.order, 4);
    assert_eq!(ode_from_json(&j).unwrap(), synthesize_ode(&FamilySpec::quartic(), 4).unwrap());
}

#[test]
fn genfun_subcommand() {
    let o = run(&["--format", "json", "genfun", "--family", &family("psi-not-one.json"), "--order-t", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["identity"], "genfun");
    assert_eq!(v[0]["order"], 10);
}

#[test]
fn bilateral_subcommand() {
    let o = run(&["bilateral", "--spec", &family("ab-bilateral.json"), "--family", &family("hermite.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("lambda compared in closed form"));

    let o = run(&["bilateral", "--family", &family("hkdf.json"), "--order-t", "6", "--order-eta", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("symmetric"));

    let o = run(&["--format", "csv", "bilateral", "--count", "2", "--order-t", "4", "--order-eta", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 3);

    let zero = temp_file("zero-a.json", r#"{"omega": {"table": [[1], [0, 1]]}, "a": ["1", "0"], "mu": 0, "nu": 1, "p": 1}"#);
    let o = run(&["bilateral", "--spec", zero.to_str().unwrap(), "--family", &family("hermite.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_polynomial_family_uses_jets() {
    let o = run(&["verify", "--family", &family("sin-weight.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("thm23-jet"));
    let o = run(&["verify", "--suite", "genfun", "--family", &family("sin-weight.json")]);
    assert_eq!(o.status.code(), Some(2));
}
