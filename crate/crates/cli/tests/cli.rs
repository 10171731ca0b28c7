use std::fs;
use std::process::{Command, Output};

fn ringlock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlock")).args(args).env_remove("RINGLOCK_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn nfields_seven() {
    let o = ringlock(&["nfields", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2 3 4 7");
}

#[test]
fn reduce_cert_text() {
    let o = ringlock(&["reduce-cert", "3", "2", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("T^2 + T = 1·(T^3 - T) + 1·((T + 1)^3 - (T + 1))"), "{s}");
}

#[test]
fn generated_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["char-cert", "7"],
        &["char-cert", "2023"],
        &["reduce-cert", "22", "2"],
        &["eg-system", "2", "2"],
        &["bn", "3", "3", "T^3+2*T+1", "--enum", "affine"],
        &["bn", "2", "2", "T^2+T+1", "--enum", "exhaustive"],
        &["bn", "2", "2", "T^2+T+1", "--enum", "custom", "--custom", "T,T^2"],
        &["p2-trace", "3"],
        &["idem-cert", "5"],
        &["idem-cert", "2", "Z^2+Z+1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.path().join(format!("c{i}.json"));
        let mut full = args.to_vec();
        let p = path.to_str().unwrap();
        full.extend(["--out", p]);
        assert_eq!(ringlock(&full).status.code(), Some(0), "{args:?}");
        let v = ringlock(&["verify", p]);
        assert_eq!(v.status.code(), Some(0), "{args:?}: {}", stdout(&v));
        let r = ringlock(&["render", p, "--style", "tutorial"]);
        assert_eq!(r.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn tampered_certificate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    assert_eq!(ringlock(&["char-cert", "7", "--out", p]).status.code(), Some(0));
    let s = fs::read_to_string(&path).unwrap().replace("\"-17\"", "\"-16\"");
    fs::write(&path, s).unwrap();
    let o = ringlock(&["verify", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
    assert_eq!(ringlock(&["render", p]).status.code(), Some(1));
}

#[test]
fn plan_bundle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plan");
    let o = ringlock(&["plan", "16", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(out.join("manifest.json").exists());
    assert!(out.join("p2-eg.json").exists());
    let v = ringlock(&["verify", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn open_cases_exit_three() {
    assert_eq!(ringlock(&["plan", "81"]).status.code(), Some(3));
    let o = ringlock(&["wstatus", "2", "6", "T^2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("d = 3"));
    assert_eq!(ringlock(&["wstatus", "2", "3", "T^2"]).status.code(), Some(0));
}

#[test]
fn saturation_budget_flag() {
    let o = ringlock(&["wstatus", "7", "1", "T^2", "--saturate", "--budget", "dim=18"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("ProvenSemantically"));
    let o = Command::new(env!("CARGO_BIN_EXE_ringlock"))
        .args(["wstatus", "7", "1", "T^2", "--saturate"])
        .env("RINGLOCK_BUDGET", "dim=8")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ringlock(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ringlock(&["nfields", "1"]).status.code(), Some(2));
    assert_eq!(ringlock(&["reduce-cert", "10", "4"]).status.code(), Some(2));
    assert_eq!(ringlock(&["period", "2", "3", "T^^2"]).status.code(), Some(2));
    assert_eq!(ringlock(&["table", "9", "3"]).status.code(), Some(2));
}

#[test]
fn table_and_json_output() {
    let o = ringlock(&["table", "94", "97"]);
    assert_eq!(stdout(&o).trim(), "94 red 1024\n95 =3\n96 =2\n97 red 4,9,25,49");
    let o = ringlock(&["table", "10", "10", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["label"], "=4");
}

#[test]
fn deterministic_output() {
    for args in [&["eg-system", "3", "3"][..], &["plan", "73", "--format", "json"], &["unpleasant", "2", "2", "200", "--jobs", "2"]] {
        assert_eq!(stdout(&ringlock(args)), stdout(&ringlock(args)), "{args:?}");
    }
}
