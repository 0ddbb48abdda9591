//! Stage-game primitives: players, actions, the utility function and the
//! 2x2 payoff bimatrix.
//!
//! The stage game is played once per slot. Each sensor either transmits or
//! stays silent; the receiver's age of information `aoi` only enters a
//! player's payoff when nobody transmits.

use crate::Error;

/// Per-sensor parameters of the stage game.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerParams {
    /// Cost paid per attempted transmission, in age units per slot.
    pub cost: f64,
    /// Weight of the logarithmic token-saving incentive.
    pub incentive_weight: f64,
    /// Remaining transmission opportunities.
    pub tokens: u32,
}

impl PlayerParams {
    pub fn new(cost: f64, incentive_weight: f64, tokens: u32) -> Self {
        PlayerParams {
            cost,
            incentive_weight,
            tokens,
        }
    }

    /// Whether transmitting is a feasible action at all.
    pub fn can_transmit(&self) -> bool {
        self.tokens >= 1
    }

    /// The same cost/incentive parameters with a different token count.
    pub fn with_tokens(self, tokens: u32) -> Self {
        PlayerParams { tokens, ..self }
    }
}

/// A single sensor decision: transmit or stay silent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Silent,
    Transmit,
}

impl Action {
    pub fn transmits(self) -> bool {
        matches!(self, Action::Transmit)
    }

    /// 0 for silent, 1 for transmit.
    pub fn bit(self) -> u8 {
        self.transmits() as u8
    }

    fn index(self) -> usize {
        self.bit() as usize
    }
}

/// One action per player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionProfile {
    pub a1: Action,
    pub a2: Action,
}

impl ActionProfile {
    pub const fn new(a1: Action, a2: Action) -> Self {
        ActionProfile { a1, a2 }
    }

    pub fn any_transmit(self) -> bool {
        self.a1.transmits() || self.a2.transmits()
    }

    pub fn transmissions(self) -> u32 {
        self.a1.bit() as u32 + self.a2.bit() as u32
    }
}

/// Both sensors silent.
pub const SILENT_SILENT: ActionProfile = ActionProfile::new(Action::Silent, Action::Silent);
/// Only player 1 transmits.
pub const TRANSMIT_SILENT: ActionProfile = ActionProfile::new(Action::Transmit, Action::Silent);
/// Only player 2 transmits.
pub const SILENT_TRANSMIT: ActionProfile = ActionProfile::new(Action::Silent, Action::Transmit);
/// Both transmit (a collision in the repeated game).
pub const TRANSMIT_TRANSMIT: ActionProfile = ActionProfile::new(Action::Transmit, Action::Transmit);

/// All four profiles in canonical order.
pub const ALL_PROFILES: [ActionProfile; 4] = [
    SILENT_SILENT,
    SILENT_TRANSMIT,
    TRANSMIT_SILENT,
    TRANSMIT_TRANSMIT,
];

/// The one-shot game: current age plus both players' parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageGame {
    /// Age of information observed this slot, in slot units.
    pub aoi: f64,
    pub player1: PlayerParams,
    pub player2: PlayerParams,
}

/// Payoff of one player for a given action pair.
///
/// The age term `-aoi` applies only when both stay silent; the cost applies
/// only when transmitting; the incentive term rewards the tokens left after
/// the action, `incentive_weight * ln(1 + tokens - s)`.
///
/// Transmitting with zero tokens is infeasible and reported as an error
/// rather than assigned a value.
pub fn utility(own: Action, other: Action, aoi: f64, params: &PlayerParams) -> Result<f64, Error> {
    if own.transmits() && !params.can_transmit() {
        return Err(Error::InfeasibleTransmit);
    }
    let staleness = if own.transmits() || other.transmits() {
        0.0
    } else {
        -aoi
    };
    let cost = if own.transmits() { -params.cost } else { 0.0 };
    let tokens_after = params.tokens - own.bit() as u32;
    let incentive = params.incentive_weight * ((1 + tokens_after) as f64).ln();
    Ok(staleness + cost + incentive)
}

/// The 2x2 bimatrix of the stage game, indexed by (player 1 action,
/// player 2 action). Cells that would require a transmit from a player
/// without tokens are infeasible rather than numeric.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffBimatrix {
    entries: [[Option<(f64, f64)>; 2]; 2],
}

impl PayoffBimatrix {
    /// Payoffs `(u1, u2)` for a profile, or `None` if the profile is
    /// infeasible.
    pub fn payoffs(&self, profile: ActionProfile) -> Option<(f64, f64)> {
        self.entries[profile.a1.index()][profile.a2.index()]
    }

    pub fn is_feasible(&self, profile: ActionProfile) -> bool {
        self.payoffs(profile).is_some()
    }

    /// Profiles with numeric payoffs, in canonical order.
    pub fn feasible_profiles(&self) -> impl Iterator<Item = ActionProfile> + '_ {
        ALL_PROFILES.into_iter().filter(|p| self.is_feasible(*p))
    }
}

/// Evaluate the full bimatrix of a stage game.
pub fn payoff_bimatrix(game: &StageGame) -> PayoffBimatrix {
    let mut entries = [[None; 2]; 2];
    for profile in ALL_PROFILES {
        let u1 = utility(profile.a1, profile.a2, game.aoi, &game.player1);
        let u2 = utility(profile.a2, profile.a1, game.aoi, &game.player2);
        if let (Ok(u1), Ok(u2)) = (u1, u2) {
            entries[profile.a1.index()][profile.a2.index()] = Some((u1, u2));
        }
    }
    PayoffBimatrix { entries }
}
