use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use stableforms::cli::FormDocument;
use stableforms::exteralg::VolumeForm;
use stableforms::stable7::{canonical_phi_minus, classify7, OrbitClass7};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stableforms")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn classify_text_output() {
    let out = run(&["classify", &fixture("omega_plus.json"), "--dim", "6"]);
    assert_eq!(stdout(&out).trim(), "O6_PLUS, lambda=1, stab_dim=16");
    let out = run(&["classify", &fixture("phi_minus.json"), "--dim", "7"]);
    assert_eq!(stdout(&out).trim(), "O7_MINUS, |sig|=7, stab_dim=14");
}

#[test]
fn classify_json_and_canonical_basis() {
    let v = json(&["classify", &fixture("omega_minus.json"), "--dim", "6", "--json", "--canonicalize"]);
    assert_eq!(v["class"], "O6_MINUS");
    assert_eq!(v["lambda"], "-4");
    assert_eq!(v["canonical_basis"][0][0], "1");
    let v = json(&["classify", &fixture("phi_minus.json"), "--dim", "7", "--json", "--canonicalize"]);
    assert_eq!(v["abs_signature"], 7);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn not_stable_is_not_an_error() {
    let out = run(&["classify", &fixture("not_stable.json"), "--dim", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("NOT_STABLE"));
}

#[test]
fn exit_codes() {
    let out = run(&["classify", &fixture("malformed.json"), "--dim", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("[2, 2, 3]"));
    let out = run(&["classify", &fixture("phi_minus.json"), "--dim", "6"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["g2class", &fixture("bundle_not_balanced.json")]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("d(ω²)"));
    let out = run(&[
        "hitchin",
        &fixture("flat_torus.json"),
        &fixture("not_stable.json"),
        "--variation",
        &fixture("omega_plus.json"),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["classify", "/nonexistent.json", "--dim", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["cayley", "--algebra", "Z"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cayley_tables() {
    let v = json(&["cayley", "--algebra", "O", "--json"]);
    assert_eq!(v["table"].as_array().unwrap().len(), 8);
    assert_eq!(v["table"][1][4], "+e5");
    let v = json(&["cayley", "--algebra", "B", "--json"]);
    assert_eq!(v["table"][4][4], "+e0");
    let v = json(&["cayley", "--algebra", "H", "--json"]);
    assert_eq!(v["table"][1][2], "+e3");
    assert_eq!(v["table"][2][1], "-e3");
}

#[test]
fn bridge_vcp7_gives_canonical_phi() {
    let v = json(&["bridge", "--from", "vcp7", "--variant", "X1", "--a", "e0"]);
    assert_eq!(v["class"], "O7_MINUS");
    let doc: FormDocument = serde_json::from_value(v["phi"].clone()).unwrap();
    assert_eq!(doc.to_form().unwrap(), canonical_phi_minus());
}

#[test]
fn bridge_vcp6_branches() {
    let v = json(&["bridge", "--from", "vcp6", "--algebra", "B", "--plane", "e0,e4", "--variant", "X2"]);
    assert_eq!(v["class"], "O6_PLUS");
    assert_eq!(v["hat_branch"], 1);
    assert_eq!(v["k_matches"], true);
    let v = json(&["bridge", "--from", "vcp6", "--algebra", "B", "--plane", "e0,e4", "--variant", "X1"]);
    assert_eq!(v["hat_branch"], -1);
    let out = run(&["bridge", "--from", "vcp6", "--algebra", "B", "--plane", "e0,e1", "--variant", "X1"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn bridge_stable6_raises_to_compact_orbit() {
    let v = json(&["bridge", "--from", "stable6", "--form", &fixture("omega_minus.json"), "--vol", "-1"]);
    assert_eq!(v["class"], "O7_MINUS");
    let doc: FormDocument = serde_json::from_value(v["phi"].clone()).unwrap();
    let phi = doc.to_form().unwrap();
    assert_eq!(doc.dim, 7);
    assert_eq!(phi, canonical_phi_minus());
    assert_eq!(classify7(&phi, &VolumeForm::standard(7)).unwrap(), OrbitClass7::O7Minus);
}

#[test]
fn g2class_reports() {
    let v = json(&["g2class", &fixture("bundle_primitive.json")]);
    assert_eq!(v["W3"], true);
    assert_eq!(v["parallel"], false);
    assert_eq!(v["torsion_coclosed"], true);
    let v = json(&["g2class", &fixture("bundle_e15.json")]);
    assert_eq!(v["semi_parallel"], true);
    assert_eq!(v["W3"], false);
    assert_eq!(v["witnesses"]["f_dot_omega"], "1");
}

#[test]
fn hitchin_values() {
    let v = json(&["hitchin", &fixture("flat_torus.json"), &fixture("omega_plus.json")]);
    assert_eq!(v["lambda"], "1");
    assert_eq!(v["phi_density"], 1.0);
    assert_eq!(v["critical"]["critical"], true);
    let v = json(&[
        "hitchin",
        &fixture("flat_torus.json"),
        &fixture("omega_plus.json"),
        "--variation",
        &fixture("omega_plus.json"),
    ]);
    let d = v["variation"]["derivative"].as_f64().unwrap();
    assert!((d - 2.0).abs() < 1e-6);
    let v = json(&["hitchin", &fixture("iwasawa.json"), &fixture("iwasawa_form.json")]);
    assert_eq!(v["critical"]["closed"], true);
    assert_eq!(v["critical"]["cocritical"], true);
}

#[test]
fn para_cy_kodaira_thurston() {
    let v = json(&[
        "para-cy",
        &fixture("kodaira_thurston.json"),
        "--alpha",
        &fixture("kt_alpha.json"),
        "--beta",
        &fixture("kt_beta.json"),
        "--omega",
        &fixture("kt_omega.json"),
    ]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["omega_closed"], true);
}

#[test]
fn vcp_check_uses_seed() {
    let a = run(&["vcp-check", "--algebra", "O", "--variant", "X1", "--trials", "20"]);
    let b = Command::new(env!("CARGO_BIN_EXE_stableforms"))
        .args(["vcp-check", "--algebra", "O", "--variant", "X1", "--trials", "20"])
        .env("STABLEFORMS_SEED", "7")
        .output()
        .unwrap();
    for out in [&a, &b] {
        let v: Value = serde_json::from_str(&stdout(out)).unwrap();
        assert_eq!(v["passed"], true);
    }
    let v = json(&["vcp-check", "--algebra", "U", "--trials", "20"]);
    assert_eq!(v["passed"], true);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify".to_string(), fixture("omega_minus.json"), "--dim".into(), "6".into(), "--json".into()],
        vec!["g2class".to_string(), fixture("bundle_primitive.json")],
        vec!["bridge".to_string(), "--from".into(), "vcp7".into()],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
