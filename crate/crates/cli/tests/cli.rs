use std::path::Path;
use std::process::{Command, Output};

fn alphaflow(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alphaflow"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("SOURCE_DATE_EPOCH", "0")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

const SMALL: &str = r#"{"grid": {"n": 16}, "alpha": 1.0, "eta": 1.0, "lambda": 1.0,
    "epsilon": 0.001, "dt": 0.002, "t_end": 0.02, "stress_amplitude": 0.2}"#;

const TOO_FAST: &str = r#"{"grid": {"n": 16}, "alpha": 1.0, "eta": 1.0, "lambda": 1.0,
    "epsilon": 0.001, "dt": 0.05, "t_end": 0.2, "velocity_amplitude": 100.0}"#;

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn run_writes_artifacts_and_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.json", SMALL);
    let out = tmp.path().join("out");
    let o = alphaflow(&["run", "--config", &cfg, "--gamma", "20"], &out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["manifest.json", "trajectory.bin", "report.csv", "summary.json"] {
        assert!(out.join(f).is_file(), "missing {f}");
    }
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "run");
    assert_eq!(manifest["created_unix"], 0);
}

#[test]
fn missing_config_is_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&alphaflow(&["run"], tmp.path())), 2);
}

#[test]
fn bad_config_is_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.json", r#"{"grid": {"n": 16}, "alpha": -1.0, "eta": 1.0, "lambda": 1.0, "dt": 0.01, "t_end": 0.1}"#);
    let o = alphaflow(&["run", "--config", &cfg], &tmp.path().join("out"));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&alphaflow(&["run", "--frobnicate"], tmp.path())), 2);
}

#[test]
fn cfl_violation_is_numerical_failure() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.json", TOO_FAST);
    let o = alphaflow(&["run", "--config", &cfg], &tmp.path().join("out"));
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn sweep_records_failed_runs() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.json", TOO_FAST);
    let out = tmp.path().join("out");
    let o = alphaflow(&["sweep-alpha", "--config", &cfg, "--alphas", "1,0.5"], &out);
    assert_eq!(code(&o), 1);
    let summary: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("summary.json")).unwrap()).unwrap();
    assert!(summary["entries"][0]["error"].is_string());
}

#[test]
fn sweep_rejects_increasing_alphas() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.json", SMALL);
    let o = alphaflow(&["sweep-alpha", "--config", &cfg, "--alphas", "0.5,1"], &tmp.path().join("out"));
    assert_eq!(code(&o), 2);
}

#[test]
fn test_pair_file_is_read() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.json", SMALL);
    let pair = write(
        tmp.path(),
        "pair.json",
        r#"{"velocity": [{"component": 0, "k": [0, 1], "coeffs": [[0.0, -0.1]]},
                         {"component": 1, "k": [1, 0], "coeffs": [[0.0, 0.1]]}],
            "stress": [{"entry": [0, 1], "k": [1, 1], "coeffs": [[0.05, 0.0], [0.01, 0.0]]}]}"#,
    );
    let out = tmp.path().join("out");
    let o = alphaflow(&["check", "--mode", "test-pair", &pair, "--config", &cfg, "--gamma", "30"], &out);
    assert!(matches!(code(&o), 0 | 1), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["mode"], "test-pair");
    assert!(out.join("report.csv").is_file());
}

#[test]
fn test_pair_needs_file() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.json", SMALL);
    let o = alphaflow(&["check", "--mode", "test-pair", "--config", &cfg, "--gamma", "30"], &tmp.path().join("out"));
    assert_eq!(code(&o), 2);
}

#[test]
fn malformed_test_pair_is_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "c.json", SMALL);
    let pair = write(tmp.path(), "pair.json", r#"{"velocity": [{"component": 0, "k": [0, 1, 2], "coeffs": []}]}"#);
    let o = alphaflow(&["check", "--mode", "test-pair", &pair, "--config", &cfg, "--gamma", "30"], &tmp.path().join("out"));
    assert_eq!(code(&o), 2);
}

#[test]
fn zero_workers_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&alphaflow(&["gronwall-selftest", "--workers", "0"], tmp.path())), 2);
}

#[test]
fn gronwall_and_demo_pass() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&alphaflow(&["gronwall-selftest"], &tmp.path().join("g"))), 0);
    let out = tmp.path().join("d");
    assert_eq!(code(&alphaflow(&["ode-demo", "--case", "linear"], &out)), 0);
    let csv = std::fs::read_to_string(out.join("demo.csv")).unwrap();
    assert!(csv.starts_with("t,x1,x2,bound"));
}
