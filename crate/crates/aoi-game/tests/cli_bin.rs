//! Exit-code and output behavior of the installed binary.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_aoi-game"))
}

fn tmp(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn help_exits_zero() {
    let output = bin().arg("--help").output().unwrap();
    assert!(output.status.success());
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("solve"));
    assert!(text.contains("sweep"));
}

#[test]
fn missing_config_is_a_usage_error() {
    let output = bin().arg("solve").output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert_eq!(
        stderr.lines().count(),
        1,
        "single-line error, got: {stderr}"
    );
    assert!(stderr.contains("--config"));
}

#[test]
fn invalid_config_is_reported_with_its_key() {
    let dir = tmp("bin_bad_config");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("bad.json");
    std::fs::write(&config, r#"{"horizon": 10, "c": 1, "alpha": 2, "g": -1}"#).unwrap();
    let output = bin()
        .args(["simulate", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert_eq!(
        stderr.lines().count(),
        1,
        "single-line error, got: {stderr}"
    );
    assert!(stderr.contains("g[0]"), "stderr: {stderr}");
}

#[test]
fn unknown_policy_is_a_usage_error() {
    let dir = tmp("bin_bad_policy");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("sim.json");
    std::fs::write(&config, r#"{"horizon": 10, "c": 1, "alpha": 2, "g": 8}"#).unwrap();
    let output = bin()
        .args(["simulate", "--policy", "bogus", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn full_simulate_run_succeeds() {
    let dir = tmp("bin_simulate");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("sim.json");
    std::fs::write(
        &config,
        r#"{"horizon": 120, "c": 100, "alpha": 200, "g": [8, 16], "seed": 6}"#,
    )
    .unwrap();
    let out = dir.join("out");
    let output = bin()
        .args(["simulate", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .args(["--seed", "9", "--format", "csv"])
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    for name in ["config.json", "trace.csv", "summary.json", "manifest.json"] {
        assert!(out.join(name).is_file(), "{name} missing");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(
        manifest["seed"].as_u64().unwrap(),
        9,
        "--seed must override the document"
    );
}
