use std::path::Path;
use std::process::{Command, Output};

fn undulator(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_undulator")).args(args).current_dir(dir).output().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn spectrum_csv_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"field": {"kind": "helical", "beta_perp": 0.05}, "gamma": 2.0, "chi": 1e-6, "n_range": [1, 2], "theta_grid": 3, "n_samples": 64}"#,
    );
    let out = undulator(&["--mode", "spectrum", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,theta,dW_pi,dW_sigma,dW_pi_classical,dW_sigma_classical");
    assert_eq!(lines.len(), 7);
    let mantissa = lines[1].split(',').nth(2).unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.trim_start_matches('-').replace('.', "").len(), 17);
}

#[test]
fn power_json_by_extension() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"mode": "power", "field": {"kind": "planar", "h0": 0.1}, "gamma": 3.0, "n_samples": 128}"#);
    let out_path = dir.path().join("p.json");
    let out = undulator(&["--config", &cfg, "--output", out_path.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert!((v["i_pi"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!(v["validity_n_cr"].is_null());
}

#[test]
fn spin_mode() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"field": {"kind": "helical", "beta_perp": 0.001}, "gamma": 1.5, "chi": 1e-6}"#);
    let out = undulator(&["--mode", "spin", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("w_down_up,w_up_down,"));
}

#[test]
fn validate_without_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = undulator(&["--mode", "validate"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert_eq!(stderr.lines().filter(|l| l.starts_with("PASS")).count(), 9);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("missing.json", None),
        ("bad.json", Some("{not json")),
        ("unknown.json", Some(r#"{"field": {"kind": "helical", "h0": 0.1}, "gamma": 2.0, "colour": 1}"#)),
        ("gamma.json", Some(r#"{"field": {"kind": "helical", "h0": 0.1}, "gamma": 0.5}"#)),
        ("strong.json", Some(r#"{"field": {"kind": "helical", "h0": 5.0}, "gamma": 2.0}"#)),
    ];
    for (name, body) in cases {
        let path = match body {
            Some(b) => write(dir.path(), name, b),
            None => dir.path().join(name).to_string_lossy().into_owned(),
        };
        let out = undulator(&["--mode", "power", "--config", &path], dir.path());
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn boson_needs_a_helix() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"field": {"kind": "planar", "h0": 0.1}, "gamma": 2.0, "chi": 1e-6}"#);
    let out = undulator(&["--mode", "spectrum", "--boson", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_count_must_be_positive() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"field": {"kind": "helical", "h0": 0.1}, "gamma": 2.0, "n_range": [1], "theta_grid": 2}"#);
    let out = Command::new(env!("CARGO_BIN_EXE_undulator"))
        .args(["--mode", "spectrum", "--config", &cfg])
        .env("UNDULATOR_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
