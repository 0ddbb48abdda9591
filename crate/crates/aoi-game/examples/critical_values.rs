//! Critical parameter values: where the equilibrium structure flips.
//!
//! ```bash
//! cargo run --example critical_values
//! ```

use aoi_game::game::PlayerParams;
use aoi_game::solver::{critical_values, threshold, threshold_curve};

fn main() {
    let aoi = 5.0;
    let player = PlayerParams {
        cost: 1.0,
        incentive_weight: 2.0,
        tokens: 8,
    };
    let theta = threshold(&player).unwrap();
    println!(
        "player: c = {}, alpha = {}, g = {}",
        player.cost, player.incentive_weight, player.tokens
    );
    println!("threshold = {theta:.6}, observed age = {aoi}");
    println!();

    let cv = critical_values(aoi, &player).unwrap();
    println!(
        "c*     = {:>10.6}  (cost above which the player stops updating)",
        cv.c_star
    );
    println!(
        "alpha* = {:>10.6}  (weight above which saving tokens wins)",
        cv.alpha_star
    );
    match cv.g_star {
        Some(g_star) => {
            println!(
                "g*     = {:>10.6}  (token level at which the threshold meets the age)",
                g_star
            )
        }
        None => println!("g*     = none (age does not exceed the bare cost)"),
    }
    println!();

    // Each critical value is a fixed point: substituting it back makes the
    // threshold hit the observed age exactly.
    let at_c = threshold_curve(cv.c_star, player.incentive_weight, player.tokens as f64);
    let at_alpha = threshold_curve(player.cost, cv.alpha_star, player.tokens as f64);
    println!("threshold at c*:     {at_c:.12}");
    println!("threshold at alpha*: {at_alpha:.12}");
    if let Some(g_star) = cv.g_star {
        let at_g = threshold_curve(player.cost, player.incentive_weight, g_star);
        println!("threshold at g*:     {at_g:.12}");
    }
    println!("(all equal to the observed age {aoi})");
}
