//! Print the payoff bimatrix of a stage game.
//!
//! ```bash
//! cargo run --example stage_game_payoffs
//! ```

use aoi_game::game::{payoff_bimatrix, Action, ActionProfile, PlayerParams, StageGame};

fn main() {
    let game = StageGame {
        aoi: 5.0,
        player1: PlayerParams {
            cost: 1.0,
            incentive_weight: 2.0,
            tokens: 8,
        },
        player2: PlayerParams {
            cost: 1.0,
            incentive_weight: 2.0,
            tokens: 8,
        },
    };
    let bimatrix = payoff_bimatrix(&game);

    println!(
        "stage game at aoi = {}: c = ({}, {}), alpha = ({}, {}), tokens = ({}, {})",
        game.aoi,
        game.player1.cost,
        game.player2.cost,
        game.player1.incentive_weight,
        game.player2.incentive_weight,
        game.player1.tokens,
        game.player2.tokens
    );
    println!();
    println!("{:>24} {:>24}", "p2 transmits", "p2 silent");
    for a1 in [Action::Transmit, Action::Silent] {
        let row: Vec<String> = [Action::Transmit, Action::Silent]
            .into_iter()
            .map(|a2| match bimatrix.payoffs(ActionProfile::new(a1, a2)) {
                Some((u1, u2)) => format!("({u1:>8.4}, {u2:>8.4})"),
                None => "infeasible".to_string(),
            })
            .collect();
        let label = if a1.transmits() {
            "p1 transmits"
        } else {
            "p1 silent"
        };
        println!("{label:<14} {:>24} {:>24}", row[0], row[1]);
    }
    println!();
    println!("Transmitting pays the cost but keeps the age term away;");
    println!("silence is free unless both stay silent and the age bites.");
}
