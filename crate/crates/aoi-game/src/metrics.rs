//! Trace averages, the price of delayed updates (PoDU), and parameter
//! sweeps over the (cost, incentive weight) plane.
//!
//! The PoDU of a configuration is the mean time-averaged age under
//! equilibrium play divided by the centralized optimum for the same
//! horizon and pooled token budget. It is at least 1: the equilibrium
//! trace is itself a feasible schedule for the optimizer.

use rayon::prelude::*;

use crate::baseline::{optimal_schedule, schedule_average_aoi};
use crate::game::PlayerParams;
use crate::rng::mix64;
use crate::sim::{simulate, SelectionPolicy, SimConfig, SimTrace};
use crate::solver::threshold_curve;
use crate::Error;

/// Time-averaged age of a trace: the sum of `aoi(0..=horizon)` divided by
/// `horizon`. Identical arithmetic to
/// [`schedule_average_aoi`](crate::baseline::schedule_average_aoi).
pub fn average_aoi(trace: &SimTrace) -> f64 {
    debug_assert_eq!(
        trace.aoi_series.len() as u64,
        trace.config.horizon as u64 + 1
    );
    let sum: u64 = trace.aoi_series.iter().map(|&a| a as u64).sum();
    sum as f64 / trace.config.horizon as f64
}

/// Ratio of the equilibrium average age to the optimal one. Errors when
/// the optimum is zero (degenerate horizon/budget combinations).
pub fn podu(avg_equilibrium: f64, avg_optimal: f64) -> Result<f64, Error> {
    if avg_optimal == 0.0 {
        return Err(Error::DegenerateBaseline);
    }
    Ok(avg_equilibrium / avg_optimal)
}

/// Fixed per-cell simulation settings of a sweep: token budgets, selection
/// policy, and the horizon cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepTemplate {
    /// Upper bound on the per-cell horizon (see [`cell_horizon`]).
    pub horizon: u32,
    pub tokens1: u32,
    pub tokens2: u32,
    pub policy: SelectionPolicy,
}

/// A full sweep request.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    /// Ascending, strictly positive transmission costs (columns).
    pub c_values: Vec<f64>,
    /// Ascending, strictly positive incentive weights (rows).
    pub alpha_values: Vec<f64>,
    pub runs_per_cell: u32,
    pub base_seed: u64,
    pub template: SweepTemplate,
}

/// Sweep result: `podu[row][col]` for `alpha_values[row]`, `c_values[col]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoduGrid {
    pub c_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    pub podu: Vec<Vec<f64>>,
    pub runs_per_cell: u32,
    pub base_seed: u64,
    pub template: SweepTemplate,
}

impl PoduGrid {
    pub fn min(&self) -> f64 {
        self.podu
            .iter()
            .flatten()
            .fold(f64::INFINITY, |m, &v| m.min(v))
    }

    pub fn max(&self) -> f64 {
        self.podu
            .iter()
            .flatten()
            .fold(f64::NEG_INFINITY, |m, &v| m.max(v))
    }

    /// `(row, col)` of the largest cell.
    pub fn argmax(&self) -> (usize, usize) {
        let mut best = (0, 0);
        for (r, row) in self.podu.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v > self.podu[best.0][best.1] {
                    best = (r, c);
                }
            }
        }
        best
    }

    /// Fraction of cells strictly below the given value.
    pub fn fraction_below(&self, bound: f64) -> f64 {
        let total = self.c_values.len() * self.alpha_values.len();
        let below = self.podu.iter().flatten().filter(|&&v| v < bound).count();
        below as f64 / total as f64
    }
}

/// Deterministic per-cell, per-run seed. Independent of evaluation order,
/// so parallel sweeps reproduce sequential ones.
pub fn derive_seed(base_seed: u64, row: u64, col: u64, run: u64) -> u64 {
    let mut h = mix64(base_seed);
    for part in [row, col, run] {
        h = mix64(h ^ mix64(part.wrapping_add(0x9e3779b97f4a7c15)));
    }
    h
}

/// Expected overshoot of a contested cycle and the probability that its
/// sampled fire is a collision.
///
/// At age `m + k` (with `m` the first integer strictly above `theta`) each
/// player transmits independently with `p = (age - theta) / age`; the
/// cycle ends at the first slot where at least one fires.
fn contested_cycle_stats(theta: f64) -> (f64, f64) {
    let first = theta.floor() + 1.0;
    let mut survival = 1.0;
    let mut expected_overshoot = 0.0;
    let mut collision = 0.0;
    let mut k = 0.0;
    while survival > 1e-9 && k < 100_000.0 {
        let age = first + k;
        let p = ((age - theta) / age).clamp(0.0, 1.0);
        let fire = 1.0 - (1.0 - p) * (1.0 - p);
        expected_overshoot += k * survival * fire;
        collision += survival * p * p;
        survival *= (1.0 - p) * (1.0 - p);
        k += 1.0;
    }
    (expected_overshoot, collision)
}

/// Expected number of slots equilibrium play needs to spend every token.
/// Capped at `cap`.
///
/// Tokens deplete one cycle at a time, each cycle ending at the first
/// integer age strictly above the currently lowest threshold. While token
/// counts differ the richer player (lower threshold) transmits alone and
/// the cycle length is deterministic. At equal counts the cycle is a
/// sampled contested one: it runs longer by the expected overshoot, and
/// with the collision probability it spends both players' tokens at once,
/// skipping the follow-up cycle of that level.
///
/// Sweep cells use this as their horizon so that a cell's score reflects
/// how equilibrium play spaces its updates, not the length of the idle
/// tail after the budget is gone — the tail is an artifact of running a
/// fast-moving configuration against a horizon sized for a slow one.
pub fn depletion_horizon(
    cost: f64,
    incentive_weight: f64,
    tokens1: u32,
    tokens2: u32,
    cap: u32,
) -> u32 {
    let low = tokens1.min(tokens2);
    let high = tokens1.max(tokens2);
    let theta = |g: u32| threshold_curve(cost, incentive_weight, g as f64);
    let mut slots = 0.0;
    for g in (low + 1)..=high {
        slots += theta(g).floor() + 2.0;
        if slots >= cap as f64 {
            return cap;
        }
    }
    for g in 1..=low {
        let th = theta(g);
        let deterministic_cycle = th.floor() + 2.0;
        let (overshoot, collision) = contested_cycle_stats(th);
        slots += deterministic_cycle + overshoot + (1.0 - collision) * deterministic_cycle;
        if slots >= cap as f64 {
            return cap;
        }
    }
    (slots.round() as u64).clamp(1, cap as u64) as u32
}

/// Horizon used for one sweep cell: the depletion span of the cell's
/// parameters, capped by the template horizon.
pub fn cell_horizon(template: &SweepTemplate, cost: f64, incentive_weight: f64) -> u32 {
    depletion_horizon(
        cost,
        incentive_weight,
        template.tokens1,
        template.tokens2,
        template.horizon,
    )
}

fn validate_axis(name: &str, values: &[f64]) -> Result<(), Error> {
    if values.is_empty() {
        return Err(Error::InvalidArgument(format!("{name} must not be empty")));
    }
    for (i, &v) in values.iter().enumerate() {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "{name}[{i}] must be a positive finite number, got {v}"
            )));
        }
        if i > 0 && values[i - 1] >= v {
            return Err(Error::InvalidArgument(format!(
                "{name} must be strictly ascending"
            )));
        }
    }
    Ok(())
}

/// Evaluate the PoDU over the whole grid. Cells are independent and run in
/// parallel; per-cell seeding keeps the result identical to a sequential
/// evaluation.
pub fn sweep_podu(spec: &GridSpec) -> Result<PoduGrid, Error> {
    validate_axis("c_values", &spec.c_values)?;
    validate_axis("alpha_values", &spec.alpha_values)?;
    if spec.runs_per_cell == 0 {
        return Err(Error::InvalidArgument(
            "runs_per_cell must be at least 1".into(),
        ));
    }
    if spec.template.horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }

    let cols = spec.c_values.len();
    let cells: Vec<(usize, usize)> = (0..spec.alpha_values.len())
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(row, col)| cell_podu(spec, row, col))
        .collect::<Result<Vec<f64>, Error>>()?;

    let podu = values.chunks(cols).map(|chunk| chunk.to_vec()).collect();
    Ok(PoduGrid {
        c_values: spec.c_values.clone(),
        alpha_values: spec.alpha_values.clone(),
        podu,
        runs_per_cell: spec.runs_per_cell,
        base_seed: spec.base_seed,
        template: spec.template,
    })
}

fn cell_podu(spec: &GridSpec, row: usize, col: usize) -> Result<f64, Error> {
    let cost = spec.c_values[col];
    let alpha = spec.alpha_values[row];
    let template = &spec.template;
    let horizon = cell_horizon(template, cost, alpha);
    let budget = template.tokens1 as u64 + template.tokens2 as u64;
    let optimal = schedule_average_aoi(&optimal_schedule(horizon, budget));

    let mut total = 0.0;
    for run in 0..spec.runs_per_cell {
        let config = SimConfig {
            horizon,
            player1: PlayerParams::new(cost, alpha, template.tokens1),
            player2: PlayerParams::new(cost, alpha, template.tokens2),
            policy: template.policy,
            seed: derive_seed(spec.base_seed, row as u64, col as u64, run as u64),
        };
        total += average_aoi(&simulate(&config));
    }
    let mean = total / spec.runs_per_cell as f64;
    podu(mean, optimal).map_err(|e| Error::SweepCell {
        c: cost,
        alpha,
        source: Box::new(e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::Schedule;
    use crate::game::{Action, ActionProfile};
    use crate::sim::{EquilibriumKind, TraceEvent};

    fn params(cost: f64, alpha: f64, tokens: u32) -> PlayerParams {
        PlayerParams {
            cost,
            incentive_weight: alpha,
            tokens,
        }
    }

    #[test]
    fn average_aoi_examples() {
        // No transmissions over four slots: the pure ramp.
        let cfg = SimConfig {
            horizon: 4,
            player1: params(1.0, 2.0, 0),
            player2: params(1.0, 2.0, 0),
            policy: SelectionPolicy::MixedSampling,
            seed: 0,
        };
        assert_eq!(average_aoi(&simulate(&cfg)), 2.5);

        // Hand-built trace with the 0,1,2,0,1,0,1 series.
        let trace = SimTrace {
            config: SimConfig {
                horizon: 6,
                ..cfg.clone()
            },
            events: Vec::new(),
            aoi_series: vec![0, 1, 2, 0, 1, 0, 1],
        };
        assert_eq!(average_aoi(&trace), 5.0 / 6.0);

        // Every slot resets: all zeros.
        let trace = SimTrace {
            config: SimConfig { horizon: 3, ..cfg },
            events: Vec::new(),
            aoi_series: vec![0, 0, 0, 0],
        };
        assert_eq!(average_aoi(&trace), 0.0);
    }

    #[test]
    fn podu_examples() {
        assert_eq!(podu(2.5, 2.5).unwrap(), 1.0);
        assert!((podu(1.0, 5.0 / 6.0).unwrap() - 1.2).abs() < 1e-12);
        assert!(matches!(podu(1.0, 0.0), Err(Error::DegenerateBaseline)));
    }

    #[test]
    fn trace_average_equals_schedule_average_of_its_transmissions() {
        for seed in 0..10 {
            let cfg = SimConfig {
                horizon: 240,
                player1: params(1.0, 2.0, 8),
                player2: params(0.7, 3.0, 16),
                policy: SelectionPolicy::MixedSampling,
                seed,
            };
            let trace = simulate(&cfg);
            let slots = trace.transmission_slots();
            let schedule = Schedule::new(cfg.horizon, slots).unwrap();
            assert_eq!(average_aoi(&trace), schedule_average_aoi(&schedule));
        }
    }

    #[test]
    fn derived_seeds_are_stable_and_distinct() {
        let a = derive_seed(7, 1, 2, 3);
        assert_eq!(a, derive_seed(7, 1, 2, 3));
        assert_ne!(a, derive_seed(7, 1, 2, 4));
        assert_ne!(a, derive_seed(7, 1, 3, 3));
        assert_ne!(a, derive_seed(7, 2, 1, 3));
        assert_ne!(a, derive_seed(8, 1, 2, 3));
    }

    #[test]
    fn depletion_horizon_matches_threshold_cycles() {
        // c = 100, alpha = 200, tokens 8/16: the asymmetric phase takes 940
        // slots (cycles 114..123 as thresholds rise); the paired phase adds
        // two cycles per level minus the collision-skipped ones plus the
        // expected contested overshoot, 2545 in total.
        assert_eq!(depletion_horizon(100.0, 200.0, 8, 16, u32::MAX), 3485);
        // Order of the token arguments does not matter.
        assert_eq!(depletion_horizon(100.0, 200.0, 16, 8, u32::MAX), 3485);
        // The cap wins when the span exceeds it.
        assert_eq!(depletion_horizon(100.0, 200.0, 8, 16, 3356), 3356);
        // No tokens at all: degenerate but positive.
        assert_eq!(depletion_horizon(1.0, 1.0, 0, 0, 100), 1);
    }

    #[test]
    fn single_cell_sweep_is_finite_and_at_least_one() {
        let spec = GridSpec {
            c_values: vec![100.0],
            alpha_values: vec![200.0],
            runs_per_cell: 2,
            base_seed: 99,
            template: SweepTemplate {
                horizon: 3356,
                tokens1: 8,
                tokens2: 16,
                policy: SelectionPolicy::MixedSampling,
            },
        };
        let grid = sweep_podu(&spec).unwrap();
        let value = grid.podu[0][0];
        assert!(value.is_finite());
        assert!(value >= 1.0 - 1e-9, "podu {value}");
    }

    #[test]
    fn sweep_is_deterministic_and_order_independent() {
        let spec = GridSpec {
            c_values: vec![1.0, 10.0, 60.0],
            alpha_values: vec![2.0, 50.0],
            runs_per_cell: 3,
            base_seed: 5,
            template: SweepTemplate {
                horizon: 800,
                tokens1: 8,
                tokens2: 16,
                policy: SelectionPolicy::MixedSampling,
            },
        };
        let a = sweep_podu(&spec).unwrap();
        let b = sweep_podu(&spec).unwrap();
        assert_eq!(a, b);

        // Sequential reference computed cell by cell with the same
        // (row, col) seed derivation.
        for (r, alpha) in spec.alpha_values.iter().enumerate() {
            for (c, cost) in spec.c_values.iter().enumerate() {
                let horizon = cell_horizon(&spec.template, *cost, *alpha);
                let budget = spec.template.tokens1 as u64 + spec.template.tokens2 as u64;
                let optimal = schedule_average_aoi(&optimal_schedule(horizon, budget));
                let mut total = 0.0;
                for run in 0..spec.runs_per_cell {
                    let config = SimConfig {
                        horizon,
                        player1: params(*cost, *alpha, spec.template.tokens1),
                        player2: params(*cost, *alpha, spec.template.tokens2),
                        policy: spec.template.policy,
                        seed: derive_seed(spec.base_seed, r as u64, c as u64, run as u64),
                    };
                    total += average_aoi(&simulate(&config));
                }
                let expected = total / spec.runs_per_cell as f64 / optimal;
                assert_eq!(a.podu[r][c], expected);
            }
        }
    }

    #[test]
    fn sweep_rejects_bad_axes() {
        let template = SweepTemplate {
            horizon: 100,
            tokens1: 2,
            tokens2: 2,
            policy: SelectionPolicy::MixedSampling,
        };
        let base = GridSpec {
            c_values: vec![1.0],
            alpha_values: vec![1.0],
            runs_per_cell: 1,
            base_seed: 0,
            template,
        };
        assert!(sweep_podu(&GridSpec {
            c_values: vec![],
            ..base.clone()
        })
        .is_err());
        assert!(sweep_podu(&GridSpec {
            c_values: vec![0.0],
            ..base.clone()
        })
        .is_err());
        assert!(sweep_podu(&GridSpec {
            c_values: vec![2.0, 1.0],
            ..base.clone()
        })
        .is_err());
        assert!(sweep_podu(&GridSpec {
            runs_per_cell: 0,
            ..base.clone()
        })
        .is_err());
        assert!(sweep_podu(&base).is_ok());
    }

    #[test]
    fn grid_summaries() {
        let grid = PoduGrid {
            c_values: vec![1.0, 2.0],
            alpha_values: vec![1.0, 2.0],
            podu: vec![vec![1.0, 1.05], vec![1.5, 1.2]],
            runs_per_cell: 1,
            base_seed: 0,
            template: SweepTemplate {
                horizon: 10,
                tokens1: 1,
                tokens2: 1,
                policy: SelectionPolicy::MixedSampling,
            },
        };
        assert_eq!(grid.min(), 1.0);
        assert_eq!(grid.max(), 1.5);
        assert_eq!(grid.argmax(), (1, 0));
        assert_eq!(grid.fraction_below(1.1), 0.5);
    }

    #[test]
    fn synthetic_trace_helpers() {
        let cfg = SimConfig {
            horizon: 2,
            player1: params(1.0, 1.0, 1),
            player2: params(1.0, 1.0, 1),
            policy: SelectionPolicy::MixedSampling,
            seed: 0,
        };
        let trace = SimTrace {
            config: cfg,
            events: vec![
                TraceEvent {
                    slot: 0,
                    aoi_before: 0,
                    action1: Action::Silent,
                    action2: Action::Silent,
                    kind: EquilibriumKind::NoTransmit,
                    tokens_after: (1, 1),
                },
                TraceEvent {
                    slot: 1,
                    aoi_before: 1,
                    action1: Action::Transmit,
                    action2: Action::Transmit,
                    kind: EquilibriumKind::MixedSampled,
                    tokens_after: (0, 0),
                },
            ],
            aoi_series: vec![0, 1, 0],
        };
        assert_eq!(trace.transmission_slots(), vec![1]);
        assert_eq!(trace.transmissions(), (1, 1));
        assert_eq!(trace.collisions(), 1);
        let _ = ActionProfile::new(Action::Silent, Action::Silent);
    }
}
