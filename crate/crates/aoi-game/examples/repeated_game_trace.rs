//! Simulate the repeated game in the high-incentive regime and show how
//! the token-rich player carries the early updates.
//!
//! ```bash
//! cargo run --example repeated_game_trace
//! ```

use aoi_game::game::PlayerParams;
use aoi_game::metrics::average_aoi;
use aoi_game::sim::{simulate, SelectionPolicy, SimConfig};

fn main() {
    let config = SimConfig {
        horizon: 3356,
        player1: PlayerParams {
            cost: 100.0,
            incentive_weight: 200.0,
            tokens: 8,
        },
        player2: PlayerParams {
            cost: 100.0,
            incentive_weight: 200.0,
            tokens: 16,
        },
        policy: SelectionPolicy::MixedSampling,
        seed: 11,
    };
    let trace = simulate(&config);

    println!(
        "horizon {} slots, tokens 8 vs 16, seed {}",
        config.horizon, config.seed
    );
    println!();
    println!(
        "{:>6} {:>10} {:>8} {:>12}",
        "slot", "age", "who", "tokens left"
    );
    for event in trace
        .events
        .iter()
        .filter(|e| e.action1.transmits() || e.action2.transmits())
    {
        let who = match (event.action1.transmits(), event.action2.transmits()) {
            (true, true) => "both",
            (true, false) => "p1",
            (false, true) => "p2",
            (false, false) => unreachable!(),
        };
        println!(
            "{:>6} {:>10} {:>8} {:>7}/{}",
            event.slot, event.aoi_before, who, event.tokens_after.0, event.tokens_after.1
        );
    }

    let (t1, t2) = trace.transmissions();
    println!();
    println!(
        "player 1 sent {t1}, player 2 sent {t2}, collisions {}",
        trace.collisions()
    );
    println!("average age over the run: {:.3}", average_aoi(&trace));
    println!();
    println!("Player 2 starts with twice the tokens, so its threshold is lower and");
    println!("it does all the updating until the counts equalize; afterwards the");
    println!("contested slots are resolved by sampling the mixed equilibrium.");
}
