use std::process::{Command, Output};

use serde_json::Value;

fn wres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wres")).args(args).env("WRES_THREADS", "2").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn odd_dimension_is_a_usage_error() {
    let o = wres(&["boundary", "--n", "5", "--pairing", "d1-dstar1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported"));
}

#[test]
fn mismatched_pairing_is_rejected() {
    let o = wres(&["boundary", "--n", "4", "--pairing", "d1-d3"]);
    assert!(!o.status.success());
    let o = wres(&["interior", "--n", "4", "--which", "d4"]);
    assert!(!o.status.success());
}

#[test]
fn four_dimensional_boundary_json() {
    let o = wres(&["boundary", "--n", "4", "--pairing", "d1-dstar1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.ends_with('\n'));
    let v: Value = serde_json::from_str(&text).unwrap();
    let cases = v["cases"].as_array().unwrap();
    let labels: Vec<&str> = cases.iter().map(|c| c["label"].as_str().unwrap()).collect();
    for l in ["a1", "a2", "a3", "b", "c"] {
        assert!(labels.contains(&l), "{l} missing");
    }
    assert_eq!(v["total"]["coeff_re"], "0");
    assert_eq!(v["total"]["coeff_im"], "0");
    let b = cases.iter().find(|c| c["label"] == "b").unwrap();
    assert_eq!(b["value"]["coeff_re"], "9/8");
    assert_eq!(b["value"]["pi_pow"], 1);
    assert_eq!(b["value"]["omega"], 3);
    assert_eq!(b["value"]["hprime_pow"], 1);
    assert_eq!(b["tuple"].as_array().unwrap().len(), 5);
}

#[test]
fn json_is_deterministic() {
    let args = ["boundary", "--n", "6", "--pairing", "d1-cube", "--case", "b"];
    let a = wres(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_wres")).args(args).env("WRES_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["label"] == "b"));
}

#[test]
fn markdown_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.md");
    let o = wres(&["boundary", "--n", "4", "--pairing", "d1-dstar1", "--format", "md", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let md = std::fs::read_to_string(&path).unwrap();
    assert!(md.contains("| case | (r, l, k, j, alpha) | value |"));
    assert!(md.contains("-3/8 π Ω_3 h'(0)"));
    assert!(md.contains("| **total** | | 0 |"));
}

#[test]
fn interior_reports() {
    let o = wres(&["interior", "--n", "6", "--which", "d4"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["prefactor"]["coeff_re"], "128");
    assert_eq!(v["prefactor"]["pi_pow"], 3);
    let terms: Vec<(String, String)> = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["term"].as_str().unwrap().into(), t["coeff"].as_str().unwrap().into()))
        .collect();
    assert_eq!(
        terms,
        vec![("s".into(), "-2/3".into()), ("f1^2*P".into(), "-24".into()), ("f2^2".into(), "40".into())]
    );
}

fn verify_with(fixture: &str) -> Output {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fx.json");
    std::fs::write(&path, fixture).unwrap();
    wres(&["verify", "--fixtures", path.to_str().unwrap()])
}

#[test]
fn custom_fixtures_pass_and_tampering_is_caught() {
    let good = r#"{"boundary":[{"id":"phi2","n":4,"pairing":"d1-dstar1","cases":["a2"],"re":"-3/8","im":"0"}],"identities":[4]}"#;
    let o = verify_with(good);
    assert!(o.status.success(), "{}", stdout(&o));

    let tampered = good.replace("-3/8", "-1/4");
    let o = verify_with(&tampered);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL phi2"));
    assert!(out.contains("expected: -1/4 π h'(0) Ω_3"));
    assert!(out.contains("got:      -3/8 π h'(0) Ω_3"));
}

#[test]
fn unreadable_fixture_file() {
    let o = wres(&["verify", "--fixtures", "/nonexistent/fixtures.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(verify_with("{not json").status.code() == Some(2));
}

#[test]
fn oracle_runs_clean() {
    let o = wres(&["oracle", "--seed", "7", "--trials", "20", "--samples", "20000"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("20 trials"));
}
