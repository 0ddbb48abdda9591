//! Command front end: JSON configuration parsing, the solve / simulate /
//! baseline / sweep commands, and CSV/JSON emission of results.
//!
//! Every command resolves its configuration (defaults and flag overrides
//! applied), writes the resolved document back out as `config.json`, runs,
//! and finishes with a `manifest.json` naming the produced files and a
//! digest of the resolved configuration. Fixed seeds make reruns
//! byte-identical.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::baseline::{optimal_schedule, schedule_average_aoi};
use crate::game::{PlayerParams, StageGame};
use crate::metrics::{average_aoi, sweep_podu, GridSpec, PoduGrid, SweepTemplate};
use crate::sim::{simulate, SelectionPolicy, SimConfig, SimTrace};
use crate::solver::{critical_values, equilibrium_set, threshold};
use crate::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_RUNS_PER_CELL: u32 = 16;
pub const DEFAULT_POLICY: SelectionPolicy = SelectionPolicy::MixedSampling;

/// Significant digits used when serializing computed numbers.
pub const OUTPUT_SIG_DIGITS: i32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Simulate,
    Baseline,
    Sweep,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Solve => "solve",
            CommandKind::Simulate => "simulate",
            CommandKind::Baseline => "baseline",
            CommandKind::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}`; expected csv or json")),
        }
    }
}

/// Command-line overrides applied on top of the configuration document.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub policy: Option<SelectionPolicy>,
    pub runs_per_cell: Option<u32>,
    pub format: OutputFormat,
}

/// Record of one command execution.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Hash of the resolved `config.json` text; platform independent.
    pub config_digest: String,
    pub seed: u64,
    pub tool_version: String,
    pub outputs: Vec<String>,
}

/// A parsed-and-resolved configuration, ready to run.
#[derive(Debug, Clone, PartialEq)]
pub enum ResolvedConfig {
    Solve(StageGame),
    Simulate(SimConfig),
    Baseline { horizon: u32, budget: u64 },
    Sweep(GridSpec),
}

// ---------------------------------------------------------------------------
// Raw document shapes

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawDoc {
    command: Option<String>,
    aoi: Option<f64>,
    horizon: Option<i64>,
    players: Option<Vec<RawPlayer>>,
    c: Option<NumOrPair>,
    alpha: Option<NumOrPair>,
    g: Option<IntOrPair>,
    policy: Option<String>,
    seed: Option<u64>,
    budget: Option<i64>,
    c_values: Option<Vec<f64>>,
    alpha_values: Option<Vec<f64>>,
    c_range: Option<RawRange>,
    alpha_range: Option<RawRange>,
    runs_per_cell: Option<i64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawPlayer {
    c: Option<f64>,
    alpha: Option<f64>,
    g: Option<i64>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum NumOrPair {
    One(f64),
    Two([f64; 2]),
}

impl NumOrPair {
    fn pair(self) -> [f64; 2] {
        match self {
            NumOrPair::One(v) => [v, v],
            NumOrPair::Two(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum IntOrPair {
    One(i64),
    Two([i64; 2]),
}

impl IntOrPair {
    fn pair(self) -> [i64; 2] {
        match self {
            IntOrPair::One(v) => [v, v],
            IntOrPair::Two(p) => p,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRange {
    min: f64,
    max: f64,
    count: i64,
}

fn config_err(key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: key.into(),
        message: message.into(),
    }
}

fn require_nonneg(value: f64, key: &str) -> Result<f64, Error> {
    if !value.is_finite() || value < 0.0 {
        return Err(config_err(
            key,
            format!("must be a non-negative finite number, got {value}"),
        ));
    }
    Ok(value)
}

fn require_tokens(value: i64, key: &str) -> Result<u32, Error> {
    if value < 0 {
        return Err(config_err(
            key,
            format!("must be a non-negative integer, got {value}"),
        ));
    }
    u32::try_from(value)
        .map_err(|_| config_err(key, format!("{value} exceeds the supported range")))
}

fn require_horizon(doc: &RawDoc) -> Result<u32, Error> {
    let horizon = doc
        .horizon
        .ok_or_else(|| config_err("horizon", "missing required key"))?;
    if horizon < 1 {
        return Err(config_err(
            "horizon",
            format!("must be at least 1, got {horizon}"),
        ));
    }
    u32::try_from(horizon)
        .map_err(|_| config_err("horizon", format!("{horizon} exceeds the supported range")))
}

fn resolve_players(doc: &RawDoc) -> Result<[PlayerParams; 2], Error> {
    let shorthand = doc.c.is_some() || doc.alpha.is_some() || doc.g.is_some();
    if let Some(players) = &doc.players {
        if shorthand {
            return Err(config_err(
                "players",
                "give either a `players` list or the c/alpha/g shorthand, not both",
            ));
        }
        if players.len() != 2 {
            return Err(config_err(
                "players",
                format!("exactly two players are required, got {}", players.len()),
            ));
        }
        let mut out = [PlayerParams::new(0.0, 0.0, 0); 2];
        for (i, raw) in players.iter().enumerate() {
            let c = raw
                .c
                .ok_or_else(|| config_err(&format!("players[{i}].c"), "missing required key"))?;
            let alpha = raw.alpha.ok_or_else(|| {
                config_err(&format!("players[{i}].alpha"), "missing required key")
            })?;
            let g = raw
                .g
                .ok_or_else(|| config_err(&format!("players[{i}].g"), "missing required key"))?;
            out[i] = PlayerParams::new(
                require_nonneg(c, &format!("players[{i}].c"))?,
                require_nonneg(alpha, &format!("players[{i}].alpha"))?,
                require_tokens(g, &format!("players[{i}].g"))?,
            );
        }
        return Ok(out);
    }
    let c = doc
        .c
        .ok_or_else(|| config_err("c", "missing required key (or use `players`)"))?
        .pair();
    let alpha = doc
        .alpha
        .ok_or_else(|| config_err("alpha", "missing required key (or use `players`)"))?
        .pair();
    let g = doc
        .g
        .ok_or_else(|| config_err("g", "missing required key (or use `players`)"))?
        .pair();
    Ok([
        PlayerParams::new(
            require_nonneg(c[0], "c[0]")?,
            require_nonneg(alpha[0], "alpha[0]")?,
            require_tokens(g[0], "g[0]")?,
        ),
        PlayerParams::new(
            require_nonneg(c[1], "c[1]")?,
            require_nonneg(alpha[1], "alpha[1]")?,
            require_tokens(g[1], "g[1]")?,
        ),
    ])
}

fn resolve_tokens_pair(doc: &RawDoc) -> Result<[u32; 2], Error> {
    if doc.players.is_some() {
        return Err(config_err(
            "players",
            "sweep varies c and alpha per cell; give the token budgets via `g`",
        ));
    }
    let g = doc
        .g
        .ok_or_else(|| config_err("g", "missing required key"))?
        .pair();
    Ok([require_tokens(g[0], "g[0]")?, require_tokens(g[1], "g[1]")?])
}

fn resolve_policy(doc: &RawDoc, overrides: &Overrides) -> Result<SelectionPolicy, Error> {
    if let Some(policy) = overrides.policy {
        return Ok(policy);
    }
    match &doc.policy {
        Some(name) => SelectionPolicy::from_str(name).map_err(|m| config_err("policy", m)),
        None => Ok(DEFAULT_POLICY),
    }
}

fn resolve_axis(
    values: &Option<Vec<f64>>,
    range: &Option<RawRange>,
    key: &str,
) -> Result<Vec<f64>, Error> {
    let values = match (values, range) {
        (Some(_), Some(_)) => {
            return Err(config_err(
                key,
                "give either the explicit list or the range, not both",
            ))
        }
        (Some(values), None) => values.clone(),
        (None, Some(range)) => {
            if range.count < 1 {
                return Err(config_err(
                    key,
                    format!("count must be at least 1, got {}", range.count),
                ));
            }
            if !(range.min.is_finite() && range.max.is_finite()) || range.min > range.max {
                return Err(config_err(
                    key,
                    "range must satisfy min <= max with finite bounds",
                ));
            }
            let count = range.count as usize;
            if count == 1 {
                vec![range.min]
            } else {
                (0..count)
                    .map(|i| range.min + (range.max - range.min) * i as f64 / (count - 1) as f64)
                    .collect()
            }
        }
        (None, None) => return Err(config_err(key, "missing required key")),
    };
    if values.is_empty() {
        return Err(config_err(key, "must not be empty"));
    }
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() || v <= 0.0 {
            return Err(config_err(
                &format!("{key}[{i}]"),
                format!("must be a positive finite number, got {v}"),
            ));
        }
        if i > 0 && values[i - 1] >= v {
            return Err(config_err(key, "values must be strictly ascending"));
        }
    }
    Ok(values)
}

fn parse_raw(text: &str) -> Result<RawDoc, Error> {
    serde_json::from_str(text).map_err(Error::from)
}

/// Parse a configuration document for a command, applying defaults and
/// overrides. The resolved result is what actually runs and what the
/// digest covers.
pub fn parse_config(
    kind: CommandKind,
    text: &str,
    overrides: &Overrides,
) -> Result<ResolvedConfig, Error> {
    let doc = parse_raw(text)?;
    if let Some(command) = &doc.command {
        if command != kind.name() {
            return Err(config_err(
                "command",
                format!(
                    "document is for `{command}`, but `{}` was requested",
                    kind.name()
                ),
            ));
        }
    }
    match kind {
        CommandKind::Solve => {
            let aoi = doc
                .aoi
                .ok_or_else(|| config_err("aoi", "missing required key"))?;
            let aoi = require_nonneg(aoi, "aoi")?;
            let [player1, player2] = resolve_players(&doc)?;
            Ok(ResolvedConfig::Solve(StageGame {
                aoi,
                player1,
                player2,
            }))
        }
        CommandKind::Simulate => {
            let horizon = require_horizon(&doc)?;
            let [player1, player2] = resolve_players(&doc)?;
            let policy = resolve_policy(&doc, overrides)?;
            let seed = overrides.seed.or(doc.seed).unwrap_or(DEFAULT_SEED);
            Ok(ResolvedConfig::Simulate(SimConfig {
                horizon,
                player1,
                player2,
                policy,
                seed,
            }))
        }
        CommandKind::Baseline => {
            let horizon = require_horizon(&doc)?;
            let budget = doc
                .budget
                .ok_or_else(|| config_err("budget", "missing required key"))?;
            if budget < 0 {
                return Err(config_err(
                    "budget",
                    format!("must be non-negative, got {budget}"),
                ));
            }
            Ok(ResolvedConfig::Baseline {
                horizon,
                budget: budget as u64,
            })
        }
        CommandKind::Sweep => {
            let horizon = require_horizon(&doc)?;
            let [tokens1, tokens2] = resolve_tokens_pair(&doc)?;
            let policy = resolve_policy(&doc, overrides)?;
            let base_seed = overrides.seed.or(doc.seed).unwrap_or(DEFAULT_SEED);
            let c_values = resolve_axis(&doc.c_values, &doc.c_range, "c_values")?;
            let alpha_values = resolve_axis(&doc.alpha_values, &doc.alpha_range, "alpha_values")?;
            let runs_per_cell = match overrides.runs_per_cell {
                Some(runs) => runs,
                None => match doc.runs_per_cell {
                    Some(runs) if runs >= 1 => runs as u32,
                    Some(runs) => {
                        return Err(config_err(
                            "runs_per_cell",
                            format!("must be at least 1, got {runs}"),
                        ))
                    }
                    None => DEFAULT_RUNS_PER_CELL,
                },
            };
            if runs_per_cell == 0 {
                return Err(config_err("runs_per_cell", "must be at least 1"));
            }
            Ok(ResolvedConfig::Sweep(GridSpec {
                c_values,
                alpha_values,
                runs_per_cell,
                base_seed,
                template: SweepTemplate {
                    horizon,
                    tokens1,
                    tokens2,
                    policy,
                },
            }))
        }
    }
}

// ---------------------------------------------------------------------------
// Resolved-config serialization and digest

#[derive(Serialize)]
struct PlayerOut {
    c: f64,
    alpha: f64,
    g: u32,
}

impl From<&PlayerParams> for PlayerOut {
    fn from(p: &PlayerParams) -> Self {
        PlayerOut {
            c: p.cost,
            alpha: p.incentive_weight,
            g: p.tokens,
        }
    }
}

#[derive(Serialize)]
struct ResolvedSolveOut<'a> {
    command: &'a str,
    aoi: f64,
    players: [PlayerOut; 2],
}

#[derive(Serialize)]
struct ResolvedSimulateOut<'a> {
    command: &'a str,
    horizon: u32,
    players: [PlayerOut; 2],
    policy: String,
    seed: u64,
}

#[derive(Serialize)]
struct ResolvedBaselineOut<'a> {
    command: &'a str,
    horizon: u32,
    budget: u64,
}

#[derive(Serialize)]
struct ResolvedSweepOut<'a> {
    command: &'a str,
    horizon: u32,
    g: [u32; 2],
    policy: String,
    c_values: &'a [f64],
    alpha_values: &'a [f64],
    runs_per_cell: u32,
    seed: u64,
}

/// Canonical JSON text of a resolved configuration. Reparsing it resolves
/// to the same configuration, so digests round-trip.
pub fn resolved_config_json(resolved: &ResolvedConfig) -> String {
    let value = match resolved {
        ResolvedConfig::Solve(game) => serde_json::to_string_pretty(&ResolvedSolveOut {
            command: "solve",
            aoi: game.aoi,
            players: [(&game.player1).into(), (&game.player2).into()],
        }),
        ResolvedConfig::Simulate(config) => serde_json::to_string_pretty(&ResolvedSimulateOut {
            command: "simulate",
            horizon: config.horizon,
            players: [(&config.player1).into(), (&config.player2).into()],
            policy: config.policy.to_string(),
            seed: config.seed,
        }),
        ResolvedConfig::Baseline { horizon, budget } => {
            serde_json::to_string_pretty(&ResolvedBaselineOut {
                command: "baseline",
                horizon: *horizon,
                budget: *budget,
            })
        }
        ResolvedConfig::Sweep(spec) => serde_json::to_string_pretty(&ResolvedSweepOut {
            command: "sweep",
            horizon: spec.template.horizon,
            g: [spec.template.tokens1, spec.template.tokens2],
            policy: spec.template.policy.to_string(),
            c_values: &spec.c_values,
            alpha_values: &spec.alpha_values,
            runs_per_cell: spec.runs_per_cell,
            seed: spec.base_seed,
        }),
    };
    let mut text = value.expect("resolved configs always serialize");
    text.push('\n');
    text
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &byte in bytes {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

/// Stable content digest of a resolved configuration text.
pub fn config_digest(text: &str) -> String {
    format!("{:016x}", fnv1a64(text.as_bytes()))
}

// ---------------------------------------------------------------------------
// Number formatting

/// Round to the given number of significant digits.
pub fn round_sig(value: f64, digits: i32) -> f64 {
    if value == 0.0 || !value.is_finite() {
        return value;
    }
    let exponent = value.abs().log10().floor() as i32;
    let shift = digits - 1 - exponent;
    if shift.abs() > 300 {
        return value;
    }
    let factor = 10f64.powi(shift);
    (value * factor).round() / factor
}

/// Plain-decimal rendering with the given significant digits, trailing
/// zeros trimmed.
pub fn format_sig(value: f64, digits: i32) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return format!("{value}");
    }
    let exponent = value.abs().log10().floor() as i32;
    let decimals = (digits - 1 - exponent).max(0) as usize;
    let text = format!("{value:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

// ---------------------------------------------------------------------------
// Output documents

#[derive(Serialize)]
struct MixedOut {
    p1: f64,
    p2: f64,
}

#[derive(Serialize)]
struct CriticalOut {
    c_star: f64,
    alpha_star: f64,
    g_star: Option<f64>,
}

#[derive(Serialize)]
struct SolveOutput {
    aoi: f64,
    thresholds: [Option<f64>; 2],
    pure_equilibria: Vec<[u8; 2]>,
    mixed_equilibrium: Option<MixedOut>,
    critical_values: [Option<CriticalOut>; 2],
}

#[derive(Serialize)]
struct SimulateSummary {
    horizon: u32,
    seed: u64,
    policy: String,
    average_aoi: f64,
    transmissions: [u64; 2],
    collisions: u64,
    tokens_left: [u32; 2],
}

#[derive(Serialize)]
struct BaselineOutput {
    horizon: u32,
    budget: u64,
    update_slots: Vec<u32>,
    average_aoi: f64,
}

#[derive(Serialize)]
struct CellRef {
    c: f64,
    alpha: f64,
}

#[derive(Serialize)]
struct SweepSummary {
    cells: usize,
    runs_per_cell: u32,
    base_seed: u64,
    min_podu: f64,
    max_podu: f64,
    max_cell: CellRef,
    fraction_below_1_1: f64,
}

fn solve_output(game: &StageGame) -> SolveOutput {
    let eqs = equilibrium_set(game);
    let rounded = |v: f64| round_sig(v, OUTPUT_SIG_DIGITS);
    let threshold_of = |p: &PlayerParams| threshold(p).ok().map(rounded);
    let criticals_of = |p: &PlayerParams| {
        critical_values(game.aoi, p).ok().map(|cv| CriticalOut {
            c_star: rounded(cv.c_star),
            alpha_star: rounded(cv.alpha_star),
            g_star: cv.g_star.map(rounded),
        })
    };
    SolveOutput {
        aoi: game.aoi,
        thresholds: [threshold_of(&game.player1), threshold_of(&game.player2)],
        pure_equilibria: eqs.pure.iter().map(|p| [p.a1.bit(), p.a2.bit()]).collect(),
        mixed_equilibrium: eqs.mixed.map(|m| MixedOut {
            p1: rounded(m.p1),
            p2: rounded(m.p2),
        }),
        critical_values: [criticals_of(&game.player1), criticals_of(&game.player2)],
    }
}

/// Render a trace as CSV: one row per slot, actions as 0/1.
pub fn write_trace_csv(trace: &SimTrace) -> String {
    let mut out = String::with_capacity(trace.events.len() * 32 + 80);
    out.push_str("slot,aoi_before,action1,action2,tokens1_after,tokens2_after,equilibrium_kind\n");
    for event in &trace.events {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            event.slot,
            event.aoi_before,
            event.action1.bit(),
            event.action2.bit(),
            event.tokens_after.0,
            event.tokens_after.1,
            event.kind
        ));
    }
    out
}

#[derive(Serialize)]
struct TraceEventOut {
    slot: u32,
    aoi_before: u32,
    action1: u8,
    action2: u8,
    tokens1_after: u32,
    tokens2_after: u32,
    equilibrium_kind: String,
}

fn write_trace_json(trace: &SimTrace) -> String {
    let events: Vec<TraceEventOut> = trace
        .events
        .iter()
        .map(|e| TraceEventOut {
            slot: e.slot,
            aoi_before: e.aoi_before,
            action1: e.action1.bit(),
            action2: e.action2.bit(),
            tokens1_after: e.tokens_after.0,
            tokens2_after: e.tokens_after.1,
            equilibrium_kind: e.kind.to_string(),
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&events).expect("events always serialize");
    text.push('\n');
    text
}

/// Render a sweep grid as long-format CSV: `c,alpha,podu,runs`.
pub fn write_sweep_csv(grid: &PoduGrid) -> String {
    let mut out = String::from("c,alpha,podu,runs\n");
    for (row, alpha) in grid.alpha_values.iter().enumerate() {
        for (col, c) in grid.c_values.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                format_sig(*c, OUTPUT_SIG_DIGITS),
                format_sig(*alpha, OUTPUT_SIG_DIGITS),
                format_sig(grid.podu[row][col], OUTPUT_SIG_DIGITS),
                grid.runs_per_cell
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct SweepCellOut {
    c: f64,
    alpha: f64,
    podu: f64,
    runs: u32,
}

fn write_sweep_json(grid: &PoduGrid) -> String {
    let mut cells = Vec::with_capacity(grid.c_values.len() * grid.alpha_values.len());
    for (row, alpha) in grid.alpha_values.iter().enumerate() {
        for (col, c) in grid.c_values.iter().enumerate() {
            cells.push(SweepCellOut {
                c: *c,
                alpha: *alpha,
                podu: round_sig(grid.podu[row][col], OUTPUT_SIG_DIGITS),
                runs: grid.runs_per_cell,
            });
        }
    }
    let mut text = serde_json::to_string_pretty(&cells).expect("cells always serialize");
    text.push('\n');
    text
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("outputs always serialize");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// Command execution

fn write_output(
    dir: &Path,
    name: &str,
    contents: &str,
    outputs: &mut Vec<String>,
) -> Result<(), Error> {
    fs::write(dir.join(name), contents)?;
    outputs.push(name.to_string());
    Ok(())
}

/// Execute a command end to end: parse, run, and write all result files
/// plus `manifest.json` into `out_dir`.
pub fn run_command(
    kind: CommandKind,
    config_text: &str,
    out_dir: &Path,
    overrides: &Overrides,
) -> Result<RunManifest, Error> {
    let resolved = parse_config(kind, config_text, overrides)?;
    let config_json = resolved_config_json(&resolved);
    let digest = config_digest(&config_json);
    let seed = match &resolved {
        ResolvedConfig::Simulate(config) => config.seed,
        ResolvedConfig::Sweep(spec) => spec.base_seed,
        _ => 0,
    };

    fs::create_dir_all(out_dir)?;
    let mut outputs = Vec::new();
    write_output(out_dir, "config.json", &config_json, &mut outputs)?;

    match resolved {
        ResolvedConfig::Solve(game) => {
            write_output(
                out_dir,
                "solve.json",
                &to_pretty_json(&solve_output(&game)),
                &mut outputs,
            )?;
        }
        ResolvedConfig::Simulate(config) => {
            let trace = simulate(&config);
            match overrides.format {
                OutputFormat::Csv => {
                    write_output(out_dir, "trace.csv", &write_trace_csv(&trace), &mut outputs)?
                }
                OutputFormat::Json => write_output(
                    out_dir,
                    "trace.json",
                    &write_trace_json(&trace),
                    &mut outputs,
                )?,
            }
            let (t1, t2) = trace.transmissions();
            let tokens_left = trace
                .events
                .last()
                .map(|e| [e.tokens_after.0, e.tokens_after.1])
                .unwrap_or([config.player1.tokens, config.player2.tokens]);
            let summary = SimulateSummary {
                horizon: config.horizon,
                seed: config.seed,
                policy: config.policy.to_string(),
                average_aoi: round_sig(average_aoi(&trace), OUTPUT_SIG_DIGITS),
                transmissions: [t1, t2],
                collisions: trace.collisions(),
                tokens_left,
            };
            write_output(
                out_dir,
                "summary.json",
                &to_pretty_json(&summary),
                &mut outputs,
            )?;
        }
        ResolvedConfig::Baseline { horizon, budget } => {
            let schedule = optimal_schedule(horizon, budget);
            let output = BaselineOutput {
                horizon,
                budget,
                update_slots: schedule.update_slots().to_vec(),
                average_aoi: round_sig(schedule_average_aoi(&schedule), OUTPUT_SIG_DIGITS),
            };
            write_output(
                out_dir,
                "baseline.json",
                &to_pretty_json(&output),
                &mut outputs,
            )?;
        }
        ResolvedConfig::Sweep(spec) => {
            let grid = sweep_podu(&spec)?;
            match overrides.format {
                OutputFormat::Csv => {
                    write_output(out_dir, "sweep.csv", &write_sweep_csv(&grid), &mut outputs)?
                }
                OutputFormat::Json => write_output(
                    out_dir,
                    "sweep.json",
                    &write_sweep_json(&grid),
                    &mut outputs,
                )?,
            }
            let (max_row, max_col) = grid.argmax();
            let summary = SweepSummary {
                cells: grid.c_values.len() * grid.alpha_values.len(),
                runs_per_cell: grid.runs_per_cell,
                base_seed: grid.base_seed,
                min_podu: round_sig(grid.min(), OUTPUT_SIG_DIGITS),
                max_podu: round_sig(grid.max(), OUTPUT_SIG_DIGITS),
                max_cell: CellRef {
                    c: grid.c_values[max_col],
                    alpha: grid.alpha_values[max_row],
                },
                fraction_below_1_1: round_sig(grid.fraction_below(1.1), OUTPUT_SIG_DIGITS),
            };
            write_output(
                out_dir,
                "summary.json",
                &to_pretty_json(&summary),
                &mut outputs,
            )?;
        }
    }

    let manifest = RunManifest {
        command: kind.name().to_string(),
        config_digest: digest,
        seed,
        tool_version: TOOL_VERSION.to_string(),
        outputs,
    };
    fs::write(out_dir.join("manifest.json"), to_pretty_json(&manifest))?;
    Ok(manifest)
}
