//! Integration tests for the command layer: file outputs, formats, digests
//! and the golden trace.

use std::fs;
use std::path::{Path, PathBuf};

use aoi_game::cli::{
    config_digest, parse_config, resolved_config_json, run_command, write_trace_csv, CommandKind,
    OutputFormat, Overrides,
};
use aoi_game::game::PlayerParams;
use aoi_game::sim::{simulate, SelectionPolicy, SimConfig};

fn out_dir(name: &str) -> PathBuf {
    Path::new(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn solve_command_reports_equilibria() {
    let dir = out_dir("solve_basic");
    let doc = r#"{"aoi": 5, "c": 1, "alpha": 2, "g": 8}"#;
    let manifest = run_command(CommandKind::Solve, doc, &dir, &Overrides::default()).unwrap();
    assert_eq!(manifest.command, "solve");
    assert_eq!(manifest.outputs, vec!["config.json", "solve.json"]);

    let solve: serde_json::Value = serde_json::from_str(&read(&dir, "solve.json")).unwrap();
    let pure = solve["pure_equilibria"].as_array().unwrap();
    let as_pairs: Vec<(u64, u64)> = pure
        .iter()
        .map(|p| (p[0].as_u64().unwrap(), p[1].as_u64().unwrap()))
        .collect();
    assert_eq!(as_pairs, vec![(0, 1), (1, 0)]);
    let mixed = &solve["mixed_equilibrium"];
    assert!((mixed["p1"].as_f64().unwrap() - 0.752886785737).abs() < 1e-9);
    let threshold = solve["thresholds"][0].as_f64().unwrap();
    assert!((threshold - 1.23556607131).abs() < 1e-9);
    let g_star = solve["critical_values"][0]["g_star"].as_f64().unwrap();
    assert!((g_star - 0.15651764275).abs() < 1e-9);
}

#[test]
fn solve_handles_token_less_players() {
    let dir = out_dir("solve_no_tokens");
    let doc =
        r#"{"aoi": 5, "players": [{"c": 1, "alpha": 2, "g": 8}, {"c": 1, "alpha": 2, "g": 0}]}"#;
    run_command(CommandKind::Solve, doc, &dir, &Overrides::default()).unwrap();
    let solve: serde_json::Value = serde_json::from_str(&read(&dir, "solve.json")).unwrap();
    assert!(solve["thresholds"][1].is_null());
    assert!(solve["critical_values"][1].is_null());
    assert!(solve["mixed_equilibrium"].is_null());
    let pure = solve["pure_equilibria"].as_array().unwrap();
    assert_eq!(pure.len(), 1);
    assert_eq!(pure[0][0].as_u64().unwrap(), 1);
    assert_eq!(pure[0][1].as_u64().unwrap(), 0);
}

#[test]
fn simulate_trace_matches_summary() {
    let dir = out_dir("simulate_basic");
    let doc = r#"{"horizon": 200, "c": 100, "alpha": 200, "g": [8, 16], "seed": 4}"#;
    let manifest = run_command(CommandKind::Simulate, doc, &dir, &Overrides::default()).unwrap();
    assert_eq!(
        manifest.outputs,
        vec!["config.json", "trace.csv", "summary.json"]
    );
    assert_eq!(manifest.seed, 4);

    let trace = read(&dir, "trace.csv");
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(
        lines[0],
        "slot,aoi_before,action1,action2,tokens1_after,tokens2_after,equilibrium_kind"
    );
    assert_eq!(lines.len(), 201, "header plus one row per slot");

    // The first update of this configuration is deterministic: player 2 at
    // slot 113, age 113, leaving 15 tokens.
    assert_eq!(lines[114], "113,113,0,1,8,15,pure_unique");

    let mut action_sums = (0u64, 0u64);
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        action_sums.0 += cells[2].parse::<u64>().unwrap();
        action_sums.1 += cells[3].parse::<u64>().unwrap();
    }
    let summary: serde_json::Value = serde_json::from_str(&read(&dir, "summary.json")).unwrap();
    assert_eq!(summary["transmissions"][0].as_u64().unwrap(), action_sums.0);
    assert_eq!(summary["transmissions"][1].as_u64().unwrap(), action_sums.1);
    assert_eq!(summary["horizon"].as_u64().unwrap(), 200);
    assert!(summary["average_aoi"].as_f64().unwrap() > 0.0);
}

#[test]
fn simulate_json_format() {
    let dir = out_dir("simulate_json");
    let doc = r#"{"horizon": 50, "c": 1, "alpha": 2, "g": [3, 3], "seed": 1}"#;
    let overrides = Overrides {
        format: OutputFormat::Json,
        ..Default::default()
    };
    let manifest = run_command(CommandKind::Simulate, doc, &dir, &overrides).unwrap();
    assert_eq!(
        manifest.outputs,
        vec!["config.json", "trace.json", "summary.json"]
    );
    let events: serde_json::Value = serde_json::from_str(&read(&dir, "trace.json")).unwrap();
    assert_eq!(events.as_array().unwrap().len(), 50);
    assert_eq!(events[0]["slot"].as_u64().unwrap(), 0);
}

#[test]
fn baseline_command_emits_the_optimum() {
    let dir = out_dir("baseline_basic");
    let doc = r#"{"horizon": 6, "budget": 2}"#;
    run_command(CommandKind::Baseline, doc, &dir, &Overrides::default()).unwrap();
    let baseline: serde_json::Value = serde_json::from_str(&read(&dir, "baseline.json")).unwrap();
    assert!((baseline["average_aoi"].as_f64().unwrap() - 5.0 / 6.0).abs() < 1e-9);
    let slots: Vec<u64> = baseline["update_slots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(slots, vec![2, 4]);
}

#[test]
fn sweep_csv_covers_the_grid() {
    let dir = out_dir("sweep_basic");
    let doc = r#"{
        "horizon": 400, "g": [8, 16], "seed": 2, "runs_per_cell": 2,
        "c_range": {"min": 1, "max": 50, "count": 3},
        "alpha_values": [2.0, 120.0]
    }"#;
    let manifest = run_command(CommandKind::Sweep, doc, &dir, &Overrides::default()).unwrap();
    assert_eq!(
        manifest.outputs,
        vec!["config.json", "sweep.csv", "summary.json"]
    );

    let sweep = read(&dir, "sweep.csv");
    let lines: Vec<&str> = sweep.lines().collect();
    assert_eq!(lines[0], "c,alpha,podu,runs");
    assert_eq!(lines.len(), 1 + 6, "header plus one row per cell");
    for line in &lines[1..] {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 4);
        let podu: f64 = cells[2].parse().unwrap();
        assert!(podu >= 1.0 - 1e-9, "podu {podu} below one");
        assert_eq!(cells[3], "2");
    }

    let summary: serde_json::Value = serde_json::from_str(&read(&dir, "summary.json")).unwrap();
    assert_eq!(summary["cells"].as_u64().unwrap(), 6);
    assert!(summary["min_podu"].as_f64().unwrap() >= 1.0 - 1e-9);
    assert!(summary["max_podu"].as_f64().unwrap() >= summary["min_podu"].as_f64().unwrap());
}

#[test]
fn emitted_config_reparses_digest_equal() {
    let dir = out_dir("roundtrip");
    let doc = r#"{"horizon": 120, "c": [1, 3], "alpha": [2, 4], "g": [5, 6], "seed": 77}"#;
    let manifest = run_command(CommandKind::Simulate, doc, &dir, &Overrides::default()).unwrap();

    let emitted = read(&dir, "config.json");
    let reparsed = parse_config(CommandKind::Simulate, &emitted, &Overrides::default()).unwrap();
    let re_emitted = resolved_config_json(&reparsed);
    assert_eq!(emitted, re_emitted);
    assert_eq!(manifest.config_digest, config_digest(&re_emitted));

    let manifest_json: serde_json::Value =
        serde_json::from_str(&read(&dir, "manifest.json")).unwrap();
    assert_eq!(
        manifest_json["config_digest"].as_str().unwrap(),
        manifest.config_digest
    );
    assert_eq!(manifest_json["command"].as_str().unwrap(), "simulate");
    assert_eq!(
        manifest_json["tool_version"].as_str().unwrap(),
        env!("CARGO_PKG_VERSION")
    );
}

#[test]
fn override_changes_the_digest() {
    let doc = r#"{"horizon": 10, "c": 1, "alpha": 2, "g": 8, "seed": 1}"#;
    let plain = parse_config(CommandKind::Simulate, doc, &Overrides::default()).unwrap();
    let overridden = parse_config(
        CommandKind::Simulate,
        doc,
        &Overrides {
            seed: Some(2),
            ..Default::default()
        },
    )
    .unwrap();
    assert_ne!(
        config_digest(&resolved_config_json(&plain)),
        config_digest(&resolved_config_json(&overridden))
    );
}

#[test]
fn golden_trace_is_stable() {
    let cfg = SimConfig {
        horizon: 40,
        player1: PlayerParams {
            cost: 1.0,
            incentive_weight: 2.0,
            tokens: 8,
        },
        player2: PlayerParams {
            cost: 1.0,
            incentive_weight: 2.0,
            tokens: 16,
        },
        policy: SelectionPolicy::MixedSampling,
        seed: 7,
    };
    let rendered = write_trace_csv(&simulate(&cfg));
    let golden = include_str!("golden/trace_reference.csv");
    assert_eq!(
        rendered, golden,
        "fixed-seed trace diverged from the golden file"
    );
}
