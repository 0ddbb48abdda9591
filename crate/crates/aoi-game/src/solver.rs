//! Static-game analysis: transmission thresholds, best responses, Nash
//! equilibria and critical parameter values.
//!
//! The stage game has a threshold structure: with the opponent silent, a
//! player prefers to transmit exactly when the age exceeds
//! `theta = cost + incentive_weight * ln((g + 1) / g)`. Everything in this
//! module derives from that quantity plus the payoff bimatrix.

use crate::game::{payoff_bimatrix, ActionProfile, PlayerParams, StageGame, ALL_PROFILES};
use crate::Error;

/// Absolute tolerance for detecting age-at-threshold equality. Thresholds
/// are transcendental, so exact float equality would be meaningless.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

/// `ln((tokens + 1) / tokens)` evaluated stably.
fn log_ratio(tokens: f64) -> f64 {
    (1.0 / tokens).ln_1p()
}

/// Threshold as a function of a real-valued token count. Continuous in
/// `tokens` so fixed points of the critical values can be checked; with
/// `incentive_weight = 0` the threshold is the bare cost for every count.
pub fn threshold_curve(cost: f64, incentive_weight: f64, tokens: f64) -> f64 {
    if incentive_weight == 0.0 {
        return cost;
    }
    cost + incentive_weight * log_ratio(tokens)
}

/// Age threshold above which transmitting beats staying silent (opponent
/// silent). Undefined for a player without tokens.
pub fn threshold(params: &PlayerParams) -> Result<f64, Error> {
    if !params.can_transmit() {
        return Err(Error::ThresholdUndefined);
    }
    Ok(threshold_curve(
        params.cost,
        params.incentive_weight,
        params.tokens as f64,
    ))
}

/// Pure-strategy best response of one player.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BestResponse {
    Transmit,
    Silent,
    /// The age sits exactly on the threshold (within tolerance); both
    /// actions yield the same payoff.
    Indifferent,
}

/// Best response given the opponent's action and the current age.
///
/// A player without tokens is always silent. Against a transmitting
/// opponent silence is strictly better. Otherwise the threshold decides.
pub fn best_response(other: crate::game::Action, aoi: f64, params: &PlayerParams) -> BestResponse {
    if !params.can_transmit() || other.transmits() {
        return BestResponse::Silent;
    }
    let theta = threshold_curve(params.cost, params.incentive_weight, params.tokens as f64);
    if (aoi - theta).abs() <= EQUALITY_TOLERANCE {
        BestResponse::Indifferent
    } else if aoi > theta {
        BestResponse::Transmit
    } else {
        BestResponse::Silent
    }
}

/// All pure Nash equilibria of the stage game, in canonical profile order.
///
/// A feasible profile is an equilibrium when neither player has a strictly
/// profitable unilateral deviation in the bimatrix. Infeasible actions
/// (transmit without tokens) are excluded both as candidates and as
/// deviations.
pub fn pure_nash(game: &StageGame) -> Vec<ActionProfile> {
    let bm = payoff_bimatrix(game);
    let mut out = Vec::new();
    for profile in ALL_PROFILES {
        let Some((u1, u2)) = bm.payoffs(profile) else {
            continue;
        };
        let flip1 = ActionProfile::new(flip(profile.a1), profile.a2);
        if let Some((v1, _)) = bm.payoffs(flip1) {
            if v1 > u1 {
                continue;
            }
        }
        let flip2 = ActionProfile::new(profile.a1, flip(profile.a2));
        if let Some((_, v2)) = bm.payoffs(flip2) {
            if v2 > u2 {
                continue;
            }
        }
        out.push(profile);
    }
    out
}

fn flip(a: crate::game::Action) -> crate::game::Action {
    match a {
        crate::game::Action::Silent => crate::game::Action::Transmit,
        crate::game::Action::Transmit => crate::game::Action::Silent,
    }
}

/// Transmit probabilities of the mixed equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedProfile {
    /// Probability that player 1 transmits.
    pub p1: f64,
    /// Probability that player 2 transmits.
    pub p2: f64,
}

/// Transmit probability that leaves the *opponent* indifferent between its
/// two actions: `p = slack / (threshold + slack)` where
/// `slack = aoi - threshold` of the opponent.
///
/// Solving the indifference condition
/// `E[u(transmit)] = E[u(silent)]` for the opponent's probability gives
/// `(1 - p) * aoi = threshold`, i.e. this expression.
pub fn indifference_probability(slack: f64, threshold: f64) -> f64 {
    if slack <= 0.0 {
        return 0.0;
    }
    slack / (threshold + slack)
}

/// Alternative closed form `slack * (1 / threshold + 1)`.
///
/// Retained for numerical comparison only: substituting it back into the
/// expected utilities does not balance them (see
/// [`indifference_probability`], which does), so no solver path uses it.
pub fn affine_slack_probability(slack: f64, threshold: f64) -> f64 {
    slack * (1.0 / threshold + 1.0)
}

/// The mixed equilibrium, if one exists at the current age.
///
/// Present exactly when both players hold tokens and the age is at or above
/// both thresholds (non-negative slack, within tolerance), and both
/// resulting probabilities lie in `[0, 1]`. At zero slack the equilibrium
/// degenerates to certain silence.
pub fn mixed_nash(game: &StageGame) -> Option<MixedProfile> {
    let th1 = threshold(&game.player1).ok()?;
    let th2 = threshold(&game.player2).ok()?;
    let slack1 = game.aoi - th1;
    let slack2 = game.aoi - th2;
    if slack1 < -EQUALITY_TOLERANCE || slack2 < -EQUALITY_TOLERANCE {
        return None;
    }
    // Player i's indifference pins the opponent's probability.
    let p2 = indifference_probability(slack1.max(0.0), th1);
    let p1 = indifference_probability(slack2.max(0.0), th2);
    if !(0.0..=1.0).contains(&p1) || !(0.0..=1.0).contains(&p2) {
        return None;
    }
    Some(MixedProfile { p1, p2 })
}

/// All equilibria of a stage game.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSet {
    /// Pure equilibria in canonical profile order.
    pub pure: Vec<ActionProfile>,
    pub mixed: Option<MixedProfile>,
}

impl EquilibriumSet {
    pub fn is_unique_pure(&self) -> bool {
        self.pure.len() == 1
    }

    pub fn contains(&self, profile: ActionProfile) -> bool {
        self.pure.contains(&profile)
    }
}

/// Bundle of [`pure_nash`] and [`mixed_nash`].
pub fn equilibrium_set(game: &StageGame) -> EquilibriumSet {
    EquilibriumSet {
        pure: pure_nash(game),
        mixed: mixed_nash(game),
    }
}

/// Cost at which the threshold equals the given age:
/// `c* = aoi - incentive_weight * ln((g + 1) / g)`.
///
/// May be negative, meaning the player stays silent at this age for every
/// non-negative cost. Requires at least one token.
pub fn critical_cost(aoi: f64, params: &PlayerParams) -> f64 {
    assert!(
        params.can_transmit(),
        "critical cost requires at least one token"
    );
    aoi - params.incentive_weight * log_ratio(params.tokens as f64)
}

/// Incentive weight at which the threshold equals the given age:
/// `alpha* = (aoi - cost) / ln((g + 1) / g)`.
///
/// Negative when the age already exceeds the bare cost so strongly that the
/// player transmits for every non-negative weight. Requires a token.
pub fn critical_alpha(aoi: f64, params: &PlayerParams) -> f64 {
    assert!(
        params.can_transmit(),
        "critical alpha requires at least one token"
    );
    (aoi - params.cost) / log_ratio(params.tokens as f64)
}

/// Real-valued token count at which the threshold equals the given age:
/// `g* = 1 / (exp((aoi - cost) / alpha) - 1)`.
///
/// With zero incentive weight the threshold is the bare cost for every
/// count, so `g* = 0`. Errors when the age does not exceed the cost, since
/// then no token count induces transmission.
pub fn critical_tokens(aoi: f64, params: &PlayerParams) -> Result<f64, Error> {
    if aoi <= params.cost {
        return Err(Error::NoTokenSolution {
            aoi,
            cost: params.cost,
        });
    }
    if params.incentive_weight == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / ((aoi - params.cost) / params.incentive_weight).exp_m1())
}

/// The three critical values of one player at a given age.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalValues {
    pub c_star: f64,
    pub alpha_star: f64,
    /// Absent when the age does not exceed the cost.
    pub g_star: Option<f64>,
}

/// Critical cost, incentive weight and token count bundled together.
/// Errors for a player without tokens.
pub fn critical_values(aoi: f64, params: &PlayerParams) -> Result<CriticalValues, Error> {
    if !params.can_transmit() {
        return Err(Error::ThresholdUndefined);
    }
    Ok(CriticalValues {
        c_star: critical_cost(aoi, params),
        alpha_star: critical_alpha(aoi, params),
        g_star: critical_tokens(aoi, params).ok(),
    })
}
