//! Thresholds, best responses and equilibria of the static game as the
//! age grows.
//!
//! ```bash
//! cargo run --example equilibrium_solver
//! ```

use aoi_game::game::{Action, PlayerParams, StageGame};
use aoi_game::solver::{best_response, equilibrium_set, threshold};

fn main() {
    let player1 = PlayerParams {
        cost: 100.0,
        incentive_weight: 200.0,
        tokens: 8,
    };
    let player2 = PlayerParams {
        cost: 100.0,
        incentive_weight: 200.0,
        tokens: 16,
    };
    let theta1 = threshold(&player1).unwrap();
    let theta2 = threshold(&player2).unwrap();
    println!("thresholds: player 1 = {theta1:.4}, player 2 = {theta2:.4}");
    println!("(the player holding more tokens crosses first)");
    println!();

    for aoi in [50.0, 113.0, 120.0, 130.0] {
        let game = StageGame {
            aoi,
            player1,
            player2,
        };
        let eqs = equilibrium_set(&game);
        let pure: Vec<String> = eqs
            .pure
            .iter()
            .map(|p| format!("({},{})", p.a1.bit(), p.a2.bit()))
            .collect();
        print!("aoi {aoi:>6}: pure {{{}}}", pure.join(", "));
        match eqs.mixed {
            Some(m) => println!(", mixed (p1 = {:.4}, p2 = {:.4})", m.p1, m.p2),
            None => println!(", no mixed equilibrium"),
        }
        let br1 = best_response(Action::Silent, aoi, &player1);
        let br2 = best_response(Action::Silent, aoi, &player2);
        println!("           best responses to a silent opponent: {br1:?} / {br2:?}");
    }

    println!();
    println!("Below both thresholds nobody moves; between them the lower-threshold");
    println!("player updates alone; above both, either player updating alone is an");
    println!("equilibrium and a mixed one appears with p = slack / age.");
}
