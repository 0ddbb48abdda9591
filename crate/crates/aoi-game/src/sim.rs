//! Finite-horizon repeated game: equilibrium play each slot, token
//! depletion, age resets and full trace recording.
//!
//! Time is slotted. In slot `t` both sensors observe the age `aoi(t)` and
//! play an equilibrium of the induced stage game; a transmission in slot
//! `t` resets `aoi(t + 1)` to zero, otherwise the age grows by one. If both
//! transmit in the same slot each pays its cost and loses a token, but the
//! age resets only once. Since thresholds are positive and the age moves in
//! integer steps, the first transmission of a cycle happens at the first
//! integer strictly above the relevant threshold.

use std::fmt;
use std::str::FromStr;

use crate::game::{
    Action, ActionProfile, PlayerParams, StageGame, SILENT_SILENT, SILENT_TRANSMIT, TRANSMIT_SILENT,
};
use crate::rng::SeededRng;
use crate::solver::{equilibrium_set, EquilibriumSet};

/// How a profile is chosen when the stage game has several equilibria
/// (age at or above both thresholds).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionPolicy {
    /// Draw each player's action independently with the mixed-equilibrium
    /// probabilities. The only selection consistent with the static
    /// analysis; collisions can occur.
    MixedSampling,
    /// Always pick player 1 as the transmitter.
    Lexicographic,
    /// The player with strictly more tokens transmits; ties fall back to
    /// mixed sampling.
    TokenPriority,
    /// Alternate the transmitter by the count of prior contested slots.
    Alternating,
}

impl SelectionPolicy {
    pub fn name(self) -> &'static str {
        match self {
            SelectionPolicy::MixedSampling => "mixed_sampling",
            SelectionPolicy::Lexicographic => "lexicographic",
            SelectionPolicy::TokenPriority => "token_priority",
            SelectionPolicy::Alternating => "alternating",
        }
    }
}

impl fmt::Display for SelectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mixed_sampling" => Ok(SelectionPolicy::MixedSampling),
            "lexicographic" => Ok(SelectionPolicy::Lexicographic),
            "token_priority" => Ok(SelectionPolicy::TokenPriority),
            "alternating" => Ok(SelectionPolicy::Alternating),
            other => Err(format!(
                "unknown policy `{other}`; expected one of mixed_sampling, lexicographic, \
                 token_priority, alternating"
            )),
        }
    }
}

/// Configuration of one repeated-game run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Number of slots to play.
    pub horizon: u32,
    /// Initial parameters of player 1 (tokens included).
    pub player1: PlayerParams,
    /// Initial parameters of player 2.
    pub player2: PlayerParams,
    pub policy: SelectionPolicy,
    pub seed: u64,
}

/// Mutable simulation state between slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimState {
    /// Next slot to play, in `[0, horizon]`.
    pub slot: u32,
    /// Age of information observed at this slot.
    pub aoi: u32,
    pub tokens1: u32,
    pub tokens2: u32,
}

/// How the played profile was determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquilibriumKind {
    /// Unique equilibrium with nobody transmitting.
    NoTransmit,
    /// Unique equilibrium with a transmission.
    PureUnique,
    /// One of several equilibria, chosen deterministically.
    PureSelected,
    /// Actions drawn from the mixed equilibrium.
    MixedSampled,
}

impl EquilibriumKind {
    pub fn name(self) -> &'static str {
        match self {
            EquilibriumKind::NoTransmit => "no_transmit",
            EquilibriumKind::PureUnique => "pure_unique",
            EquilibriumKind::PureSelected => "pure_selected",
            EquilibriumKind::MixedSampled => "mixed_sampled",
        }
    }
}

impl fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Record of one played slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEvent {
    pub slot: u32,
    /// Age observed when the decisions were made.
    pub aoi_before: u32,
    pub action1: Action,
    pub action2: Action,
    pub kind: EquilibriumKind,
    pub tokens_after: (u32, u32),
}

/// Full record of a run: per-slot events plus the age series
/// `aoi(0..=horizon)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    pub config: SimConfig,
    pub events: Vec<TraceEvent>,
    pub aoi_series: Vec<u32>,
}

impl SimTrace {
    /// Slots in which at least one player transmitted, ascending.
    pub fn transmission_slots(&self) -> Vec<u32> {
        self.events
            .iter()
            .filter(|e| e.action1.transmits() || e.action2.transmits())
            .map(|e| e.slot)
            .collect()
    }

    /// Transmission counts per player.
    pub fn transmissions(&self) -> (u64, u64) {
        let t1 = self.events.iter().filter(|e| e.action1.transmits()).count() as u64;
        let t2 = self.events.iter().filter(|e| e.action2.transmits()).count() as u64;
        (t1, t2)
    }

    /// Slots in which both players transmitted.
    pub fn collisions(&self) -> u64 {
        self.events
            .iter()
            .filter(|e| e.action1.transmits() && e.action2.transmits())
            .count() as u64
    }
}

/// Choose the profile to play from the current equilibrium set.
///
/// A unique equilibrium is played as is. With several equilibria the set is
/// either the two single-transmitter profiles (age at or above both
/// thresholds) — resolved by the policy — or a set containing certain
/// silence, which happens only when the age sits exactly on a threshold;
/// the indifferent player then stays silent, so the crossing takes effect
/// at the first integer strictly above the threshold.
///
/// `prior_contested` counts earlier slots resolved between the two
/// single-transmitter profiles; only the alternating policy reads it.
pub fn select_profile(
    eqs: &EquilibriumSet,
    state: &SimState,
    policy: SelectionPolicy,
    rng: &mut SeededRng,
    prior_contested: u64,
) -> (ActionProfile, EquilibriumKind) {
    debug_assert!(
        !eqs.pure.is_empty(),
        "a 2x2 stage game always has a pure equilibrium"
    );
    if eqs.pure.len() == 1 {
        let profile = eqs.pure[0];
        let kind = if profile.any_transmit() {
            EquilibriumKind::PureUnique
        } else {
            EquilibriumKind::NoTransmit
        };
        return (profile, kind);
    }
    if eqs.pure.contains(&SILENT_SILENT) {
        return (SILENT_SILENT, EquilibriumKind::PureSelected);
    }
    match policy {
        SelectionPolicy::MixedSampling => (sample_mixed(eqs, rng), EquilibriumKind::MixedSampled),
        SelectionPolicy::Lexicographic => (TRANSMIT_SILENT, EquilibriumKind::PureSelected),
        SelectionPolicy::TokenPriority => {
            if state.tokens1 > state.tokens2 {
                (TRANSMIT_SILENT, EquilibriumKind::PureSelected)
            } else if state.tokens2 > state.tokens1 {
                (SILENT_TRANSMIT, EquilibriumKind::PureSelected)
            } else {
                (sample_mixed(eqs, rng), EquilibriumKind::MixedSampled)
            }
        }
        SelectionPolicy::Alternating => {
            let profile = if prior_contested.is_multiple_of(2) {
                TRANSMIT_SILENT
            } else {
                SILENT_TRANSMIT
            };
            (profile, EquilibriumKind::PureSelected)
        }
    }
}

fn sample_mixed(eqs: &EquilibriumSet, rng: &mut SeededRng) -> ActionProfile {
    let mixed = eqs
        .mixed
        .expect("two single-transmitter equilibria imply a mixed equilibrium");
    // Player 1 is drawn first; the order is part of the reproducible stream.
    let a1 = if rng.chance(mixed.p1) {
        Action::Transmit
    } else {
        Action::Silent
    };
    let a2 = if rng.chance(mixed.p2) {
        Action::Transmit
    } else {
        Action::Silent
    };
    ActionProfile::new(a1, a2)
}

/// A repeated game in progress.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: SimConfig,
    state: SimState,
    rng: SeededRng,
    contested_slots: u64,
}

impl Simulation {
    pub fn new(config: SimConfig) -> Self {
        let state = SimState {
            slot: 0,
            aoi: 0,
            tokens1: config.player1.tokens,
            tokens2: config.player2.tokens,
        };
        let rng = SeededRng::new(config.seed);
        Simulation {
            config,
            state,
            rng,
            contested_slots: 0,
        }
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    pub fn finished(&self) -> bool {
        self.state.slot >= self.config.horizon
    }

    /// Play one slot: build the stage game, select an equilibrium profile,
    /// spend tokens, and advance the age.
    pub fn step(&mut self) -> TraceEvent {
        debug_assert!(!self.finished());
        let game = StageGame {
            aoi: self.state.aoi as f64,
            player1: self.config.player1.with_tokens(self.state.tokens1),
            player2: self.config.player2.with_tokens(self.state.tokens2),
        };
        let eqs = equilibrium_set(&game);
        let contested = eqs.pure.len() > 1 && !eqs.pure.contains(&SILENT_SILENT);
        let (profile, kind) = select_profile(
            &eqs,
            &self.state,
            self.config.policy,
            &mut self.rng,
            self.contested_slots,
        );
        if contested {
            self.contested_slots += 1;
        }

        let aoi_before = self.state.aoi;
        if profile.a1.transmits() {
            debug_assert!(self.state.tokens1 > 0);
            self.state.tokens1 -= 1;
        }
        if profile.a2.transmits() {
            debug_assert!(self.state.tokens2 > 0);
            self.state.tokens2 -= 1;
        }
        self.state.aoi = if profile.any_transmit() {
            0
        } else {
            aoi_before + 1
        };
        self.state.slot += 1;

        TraceEvent {
            slot: self.state.slot - 1,
            aoi_before,
            action1: profile.a1,
            action2: profile.a2,
            kind,
            tokens_after: (self.state.tokens1, self.state.tokens2),
        }
    }
}

/// Run a full simulation. Deterministic given the configuration, seed
/// included.
pub fn simulate(config: &SimConfig) -> SimTrace {
    let mut sim = Simulation::new(config.clone());
    let horizon = config.horizon as usize;
    let mut events = Vec::with_capacity(horizon);
    let mut aoi_series = Vec::with_capacity(horizon + 1);
    aoi_series.push(0);
    while !sim.finished() {
        let event = sim.step();
        aoi_series.push(sim.state.aoi);
        events.push(event);
    }
    SimTrace {
        config: config.clone(),
        events,
        aoi_series,
    }
}
