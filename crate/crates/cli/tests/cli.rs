use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn gme(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gme"))
        .args(args)
        .output()
        .expect("run gme")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn eval_ghz4() {
    let out = gme(&["eval", &data("ghz4.state")]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("V               0.3333"), "{text}");
    assert!(text.contains("classification  GME"));

    let doc = json(&gme(&["eval", "--json", &data("ghz4.state")]));
    let state = &doc["states"][0];
    assert!((state["volume"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-9);
    assert_eq!(state["classification"], "GME");
    assert_eq!(state["concurrences"].as_object().unwrap().len(), 7);
    assert_eq!(state["zero_cuts"].as_array().unwrap().len(), 0);
}

#[test]
fn eval_biseparable_five_qubits() {
    let doc = json(&gme(&["eval", "--json", &data("phi12345.state")]));
    let state = &doc["states"][0];
    assert_eq!(state["volume"].as_f64().unwrap(), 0.0);
    assert_eq!(state["classification"], "biseparable");
    let zero: Vec<&str> = state["zero_cuts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(zero.contains(&"1,3"), "{zero:?}");
    assert_eq!(state["concurrences"]["1,3"].as_f64().unwrap(), 0.0);
}

#[test]
fn eval_product_state() {
    let out = gme(&["eval", &data("product3.state")]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("fully-separable"));
}

#[test]
fn eval_triangle_with_normalize() {
    let out = gme(&["eval", &data("w3.state")]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("norm"));

    let doc = json(&gme(&[
        "eval",
        "--normalize",
        "--measure",
        "triangle",
        "--json",
        &data("w3.state"),
    ]));
    let state = &doc["states"][0];
    assert!((state["triangle"].as_f64().unwrap() - 8.0 / 9.0).abs() < 1e-12);
    assert!(state["volume"].is_null());
    assert!(state["c_gme"].is_null());
}

#[test]
fn triangle_rejects_four_parties() {
    let out = gme(&["eval", "--measure", "triangle", &data("ghz4.state")]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("three parties"));
}

#[test]
fn parse_errors_report_line_numbers() {
    let out = gme(&["eval", &data("bad_digit.state")]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("line 3") && err.contains("out of range"),
        "{err}"
    );
}

#[test]
fn batch_eval_keeps_input_order_and_fails_on_any_error() {
    let files = [
        data("phi12345.state"),
        data("ghz4.state"),
        data("product3.state"),
    ];
    let mut args = vec!["eval", "--json"];
    args.extend(files.iter().map(String::as_str));
    let doc = json(&gme(&args));
    let ids: Vec<&str> = doc["states"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, files.iter().map(String::as_str).collect::<Vec<_>>());

    let bad = data("bad_digit.state");
    let out = gme(&["eval", &files[1], &bad]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("0.3333"));
}

#[test]
fn two_party_volume_is_rejected_with_guidance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bell.state");
    std::fs::write(&path, "dims 2 2\namp 0 0 1 0\namp 1 1 1 0\n").unwrap();
    let path = path.display().to_string();
    let out = gme(&["eval", "--normalize", "--measure", "volume", &path]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("--measure cgme"));
    let ok = gme(&["eval", "--normalize", "--measure", "cgme", &path]);
    assert!(ok.status.success());
}

#[test]
fn bipartitions_listing() {
    let out = gme(&["bipartitions", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "# k=1\n1\n2\n3\n4\n# k=2\n1,2\n1,3\n1,4\n");
    let six = stdout(&gme(&["bipartitions", "6"]));
    assert_eq!(six.lines().filter(|l| !l.starts_with('#')).count(), 31);
    assert!(!gme(&["bipartitions", "1"]).status.success());
}

#[test]
fn paper_report_rows() {
    let out = gme(&["paper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("W4") && text.contains("DISCREPANCY"));

    let doc = json(&gme(&["paper", "--json"]));
    let rows = doc["paper_rows"].as_array().unwrap();
    let row = |state: &str, q: &str| {
        rows.iter()
            .find(|r| r["state"] == state && r["quantity"] == q)
            .unwrap()
            .clone()
    };
    assert!(row("psi_B", "V")["deviation"].as_f64().unwrap() <= 2e-3);
    assert!(row("psi_D", "V")["deviation"].as_f64().unwrap() <= 2e-3);
    let w = row("W4", "V");
    assert!((w["computed"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(w["status"], "discrepancy");
}

#[test]
fn json_output_round_trips_byte_identically() {
    for args in [
        vec!["paper".to_string(), "--json".to_string()],
        vec!["eval".into(), "--json".into(), data("phi12345.state")],
        vec![
            "random".into(),
            "--json".into(),
            "--dims".into(),
            "3,2,2".into(),
            "--trials".into(),
            "10".into(),
            "--check".into(),
            "permutation-invariance".into(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = stdout(&gme(&args));
        let doc: gme_core::report::ReportDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(doc.to_json() + "\n", text);
    }
}

#[test]
fn random_check_passes() {
    let out = gme(&[
        "random",
        "--dims",
        "2,2,2,2",
        "--seed",
        "7",
        "--trials",
        "100",
        "--check",
        "lu-invariance",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).trim_end().ends_with("PASS"));
}

#[test]
fn random_is_deterministic() {
    let args = [
        "random",
        "--dims",
        "3,2,2",
        "--seed",
        "11",
        "--trials",
        "20",
        "--check",
        "oracle-agreement",
        "--json",
    ];
    let a = gme(&args);
    let b = gme(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn random_usage_errors() {
    let out = gme(&["random", "--dims", "2,2,2,2", "--check", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gme(&["random", "--dims", "2,x", "--check", "lu-invariance"]);
    assert_eq!(out.status.code(), Some(2));
    let out = gme(&[
        "random",
        "--dims",
        "2,2,2",
        "--check",
        "n4-formula-equivalence",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn failed_check_exits_nonzero() {
    let out = gme(&[
        "random",
        "--dims",
        "3,3,3",
        "--trials",
        "20",
        "--check",
        "lu-invariance",
        "--tolerance",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).trim_end().ends_with("FAIL"));
}
