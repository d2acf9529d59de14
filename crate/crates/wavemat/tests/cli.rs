//! End-to-end tests of the `wavemat` binary: documents in, documents out,
//! exit codes and error payloads as promised.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wavemat"))
}

fn write_doc(dir: &tempfile::TempDir, name: &str, doc: &Value) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string_pretty(doc).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn run_ok(cmd: &mut Command) -> String {
    let out = cmd.output().unwrap();
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn error_payload(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr must be machine-readable JSON")
}

fn haar_params() -> Value {
    json!({
        "schema_version": 1,
        "field": "qi",
        "m": 2,
        "n": 1,
        "gamma": [["1"]],
    })
}

fn haar_matrix() -> Value {
    json!({
        "schema_version": 1,
        "field": "qi",
        "m": 2,
        "n": 1,
        "coeffs": [
            [["1/2", "-1/2"], ["-1/2", "1/2"]],
            [["1/2", "1/2"], ["1/2", "1/2"]],
        ],
    })
}

#[test]
fn generate_zero_gamma_is_diag_one_zcubed() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_doc(
        &dir,
        "p.json",
        &json!({
            "schema_version": 1,
            "field": "qi",
            "m": 2,
            "n": 3,
            "gamma": [["0", "0", "0"]],
        }),
    );
    let text = run_ok(bin().args(["generate", &params, "--field", "qi"]));
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["m"], json!(2));
    assert_eq!(doc["n"], json!(3));
    // diag(1, z^3): identity block at k = 0 except the (1,1) slot, which
    // carries its 1 at k = 3
    let zero2 = json!([["0", "0"], ["0", "0"]]);
    assert_eq!(doc["coeffs"][0], json!([["1", "0"], ["0", "0"]]));
    assert_eq!(doc["coeffs"][1], zero2);
    assert_eq!(doc["coeffs"][2], zero2);
    assert_eq!(doc["coeffs"][3], json!([["0", "0"], ["0", "1"]]));
}

#[test]
fn generate_gamma_one_is_haar() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_doc(&dir, "p.json", &haar_params());
    let text = run_ok(bin().args(["generate", &params, "--field", "qi"]));
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, haar_matrix());
}

#[test]
fn generate_params_generate_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_doc(
        &dir,
        "p.json",
        &json!({
            "schema_version": 1,
            "field": "qi",
            "m": 3,
            "n": 2,
            "gamma": [["1/2", "-1/3+1/5*i"], ["2", "0-3/7*i"]],
        }),
    );
    let first = run_ok(bin().args(["generate", &params, "--field", "qi"]));
    let mat = write_doc(&dir, "a.json", &serde_json::from_str(&first).unwrap());
    let recovered = run_ok(bin().args(["params", &mat, "--field", "qi"]));
    let params2 = write_doc(&dir, "p2.json", &serde_json::from_str(&recovered).unwrap());
    let second = run_ok(bin().args(["generate", &params2, "--field", "qi"]));
    assert_eq!(first, second);
}

#[test]
fn malformed_gamma_dimensions_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_doc(
        &dir,
        "bad.json",
        &json!({
            "schema_version": 1,
            "field": "qi",
            "m": 3,
            "n": 2,
            "gamma": [["1", "2"]],
        }),
    );
    let out = bin().args(["generate", &params, "--field", "qi"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let payload = error_payload(&out);
    assert_eq!(payload["error"]["exit"], json!(2));
    assert!(
        payload["error"]["message"].as_str().unwrap().contains("dimension mismatch"),
        "payload: {payload}"
    );
}

#[test]
fn invalid_json_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "not json {").unwrap();
    let out = bin()
        .args(["check", path.to_str().unwrap(), "--field", "qi"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_payload(&out)["error"]["exit"], json!(2));
}

#[test]
fn non_paraunitary_matrix_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = haar_matrix();
    doc["coeffs"][0][0][0] = json!("2/3"); // breaks paraunitarity
    let mat = write_doc(&dir, "broken.json", &doc);
    let out = bin().args(["check", &mat, "--field", "qi"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_payload(&out)["error"]["exit"], json!(3));
}

#[test]
fn check_haar_report() {
    let dir = tempfile::tempdir().unwrap();
    let mat = write_doc(&dir, "haar.json", &haar_matrix());
    let text = run_ok(bin().args(["check", &mat, "--field", "qi"]));
    let report: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["order"], json!(1));
    assert_eq!(report["degree"], json!(1));
    assert_eq!(report["rank0"], json!(1));
    assert_eq!(report["class"], json!("WM1"));
    assert_eq!(report["residual"], json!(0.0));
}

#[test]
fn factor_then_product_restores_document() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_doc(
        &dir,
        "p.json",
        &json!({
            "schema_version": 1,
            "field": "qi",
            "m": 3,
            "n": 2,
            "gamma": [["1", "1/2"], ["-1/3", "2"]],
        }),
    );
    let matrix = run_ok(bin().args(["generate", &params, "--field", "qi"]));
    let mat = write_doc(&dir, "a.json", &serde_json::from_str(&matrix).unwrap());
    let chain = run_ok(bin().args(["factor", &mat, "--field", "qi"]));
    let chain_doc: Value = serde_json::from_str(&chain).unwrap();
    assert_eq!(chain_doc["factors"].as_array().unwrap().len(), 2);
    let chain_path = write_doc(&dir, "chain.json", &chain_doc);
    let back = run_ok(bin().args(["product", &chain_path, "--field", "qi"]));
    assert_eq!(back, matrix);
}

#[test]
fn complete_haar_row_yields_haar() {
    let dir = tempfile::tempdir().unwrap();
    let row = write_doc(
        &dir,
        "row.json",
        &json!({
            "schema_version": 1,
            "field": "qi",
            "m": 2,
            "n": 1,
            "row": [["1/2", "1/2"], ["-1/2", "1/2"]],
        }),
    );
    let text = run_ok(bin().args(["complete", &row, "--field", "qi"]));
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, haar_matrix());
}

#[test]
fn stdin_and_stdout_dashes() {
    let mut child = bin()
        .args(["generate", "-", "--field", "qi", "--out", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(serde_json::to_string(&haar_params()).unwrap().as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc, haar_matrix());
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let params = write_doc(&dir, "p.json", &haar_params());
    let target = dir.path().join("out.json");
    run_ok(bin().args(["generate", &params, "--field", "qi", "--out", target.to_str().unwrap()]));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(doc, haar_matrix());
}

#[test]
fn wavemat_eps_loosens_float_certification() {
    let dir = tempfile::tempdir().unwrap();
    let h = 0.5 + 1e-6; // outside the default residual budget
    let doc = json!({
        "schema_version": 1,
        "field": "c64",
        "m": 2,
        "n": 1,
        "coeffs": [
            [[[h, 0.0], [-0.5, 0.0]], [[-0.5, 0.0], [0.5, 0.0]]],
            [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]],
        ],
    });
    let mat = write_doc(&dir, "near.json", &doc);

    let strict = bin().args(["check", &mat]).env_remove("WAVEMAT_EPS").output().unwrap();
    assert_eq!(strict.status.code(), Some(3));

    let loose = bin()
        .args(["check", &mat])
        .env("WAVEMAT_EPS", "1e-3")
        .output()
        .unwrap();
    assert!(loose.status.success(), "{}", String::from_utf8_lossy(&loose.stderr));

    let bad = bin()
        .args(["check", &mat])
        .env("WAVEMAT_EPS", "banana")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn export_csv_flat_rows() {
    let dir = tempfile::tempdir().unwrap();
    let mat = write_doc(&dir, "haar.json", &haar_matrix());
    let csv = run_ok(bin().args(["export", &mat, "--csv", "--field", "qi"]));
    assert_eq!(csv, "1/2,-1/2,1/2,1/2\n-1/2,1/2,1/2,1/2\n");
}

#[test]
fn approx_emits_exact_matrix_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2; // irrational entries
    let g = s / (1.0 + s); // float Haar-like gamma
    let params = write_doc(
        &dir,
        "p.json",
        &json!({
            "schema_version": 1,
            "field": "c64",
            "m": 2,
            "n": 1,
            "gamma": [[[2.0 * g / (1.0 - g * g), 0.0]]],
        }),
    );
    let matrix = run_ok(bin().args(["generate", &params]));
    let mat = write_doc(&dir, "a.json", &serde_json::from_str(&matrix).unwrap());
    let text = run_ok(bin().args(["approx", &mat, "--max-den", "1000"]));
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["matrix"]["field"], json!("qi"));
    assert_eq!(doc["report"]["certificate"], json!(true));
    assert!(doc["report"]["distance"].as_f64().unwrap() <= 1e-3);

    // the emitted matrix must itself pass exact certification
    let out_mat = write_doc(&dir, "exact.json", &doc["matrix"]);
    let report = run_ok(bin().args(["check", &out_mat, "--field", "qi"]));
    let rep: Value = serde_json::from_str(&report).unwrap();
    assert_eq!(rep["residual"], json!(0.0));
}
