//! Game-theoretic scheduling of sensor updates under an age-of-information
//! objective.
//!
//! Two sensors observe the same process and decide independently, slot by
//! slot, whether to push an update to a shared receiver. A transmission
//! costs `c` and spends one token from a finite budget `g`; staying silent
//! lets the receiver's information age grow. A logarithmic bonus on the
//! remaining tokens, weighted by `alpha`, rewards keeping options open for
//! later.
//!
//! The crate is organised around that model:
//!
//! - [`game`] — players, actions, the per-slot utility function and the
//!   2x2 payoff bimatrix of the one-shot stage game.
//! - [`solver`] — transmission thresholds, best responses, pure and mixed
//!   Nash equilibria, and the critical parameter values where the
//!   equilibrium structure changes.
//! - [`sim`] — the finite-horizon repeated game: equilibrium play each
//!   slot, token depletion, age resets, full trace recording.
//! - [`baseline`] — the centralized optimal update schedule and its
//!   average age, used as the efficiency reference.
//! - [`metrics`] — trace averages, the price of delayed updates (PoDU),
//!   and parameter-sweep grids.
//! - [`cli`] — JSON configuration parsing and the solve / simulate /
//!   baseline / sweep commands with CSV/JSON emission.
//!
//! ```
//! use aoi_game::game::{PlayerParams, StageGame};
//! use aoi_game::solver::equilibrium_set;
//!
//! let sensor = PlayerParams { cost: 1.0, incentive_weight: 2.0, tokens: 8 };
//! let game = StageGame { aoi: 5.0, player1: sensor, player2: sensor };
//! let eqs = equilibrium_set(&game);
//! // Age is above both thresholds: either sensor transmitting alone is an
//! // equilibrium, and a mixed equilibrium exists as well.
//! assert_eq!(eqs.pure.len(), 2);
//! assert!(eqs.mixed.is_some());
//! ```

pub mod baseline;
pub mod cli;
pub mod game;
pub mod metrics;
pub mod rng;
pub mod sim;
pub mod solver;

pub use game::{Action, ActionProfile, PayoffBimatrix, PlayerParams, StageGame};
pub use sim::{SelectionPolicy, SimConfig, SimTrace};
pub use solver::EquilibriumSet;

/// Errors produced by this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A transmit action was requested for a player without tokens.
    #[error("transmit requires at least one token")]
    InfeasibleTransmit,
    /// The transmission threshold is undefined for a player without tokens.
    #[error("threshold is undefined for a player with no tokens")]
    ThresholdUndefined,
    /// No finite token count induces transmission at this age.
    #[error("no token count induces transmission: aoi {aoi} does not exceed cost {cost}")]
    NoTokenSolution { aoi: f64, cost: f64 },
    /// Exhaustive schedule search would exceed the enumeration guard.
    #[error("{combinations} candidate schedules exceed the enumeration limit of {limit}")]
    EnumerationTooLarge { combinations: u128, limit: u128 },
    /// The optimal average age is zero, so the efficiency ratio is undefined.
    #[error("optimal average aoi is zero; the ratio is undefined")]
    DegenerateBaseline,
    /// A schedule violated its structural invariants.
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A configuration document failed validation.
    #[error("config error at `{key}`: {message}")]
    Config { key: String, message: String },
    /// A sweep cell failed; coordinates identify the cell.
    #[error("sweep cell (c = {c}, alpha = {alpha}) failed: {source}")]
    SweepCell {
        c: f64,
        alpha: f64,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("invalid config JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by bad user input (usage or configuration),
    /// as opposed to runtime failures.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::Config { .. } | Error::Json(_) | Error::InvalidArgument(_)
        )
    }
}
