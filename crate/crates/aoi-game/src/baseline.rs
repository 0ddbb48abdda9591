//! Centralized optimal scheduling: the efficiency reference for the
//! repeated game.
//!
//! A central scheduler with a pooled budget of `n` updates places them at
//! distinct slots in `[1, horizon]`, never simultaneously. The age follows
//! the same dynamics as the repeated game: an update at slot `t` zeroes
//! `aoi(t + 1)`, otherwise the age grows by one. The optimum spreads the
//! updates so the age ramps between resets are as equal as possible.

use crate::Error;

/// Maximum number of candidate schedules [`brute_force_optimal`] will
/// enumerate.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// A fixed update schedule over a finite horizon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    horizon: u32,
    update_slots: Vec<u32>,
}

impl Schedule {
    /// Slots must be strictly increasing and lie in `[1, horizon]`.
    pub fn new(horizon: u32, update_slots: Vec<u32>) -> Result<Self, Error> {
        if horizon == 0 {
            return Err(Error::InvalidSchedule("horizon must be at least 1".into()));
        }
        for (i, &slot) in update_slots.iter().enumerate() {
            if slot < 1 || slot > horizon {
                return Err(Error::InvalidSchedule(format!(
                    "slot {slot} outside [1, {horizon}]"
                )));
            }
            if i > 0 && update_slots[i - 1] >= slot {
                return Err(Error::InvalidSchedule(format!(
                    "slots must be strictly increasing, got {} before {slot}",
                    update_slots[i - 1]
                )));
            }
        }
        Ok(Schedule {
            horizon,
            update_slots,
        })
    }

    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn update_slots(&self) -> &[u32] {
        &self.update_slots
    }
}

/// Time-averaged age of a schedule: the sum of `aoi(0..=horizon)` divided
/// by `horizon`, with `aoi(t + 1) = 0` when `t` carries an update.
pub fn schedule_average_aoi(schedule: &Schedule) -> f64 {
    let mut sum: u64 = 0; // aoi(0) = 0 contributes nothing
    let mut aoi: u64 = 0;
    let mut next = 0usize;
    let slots = &schedule.update_slots;
    for t in 0..schedule.horizon {
        if next < slots.len() && slots[next] == t {
            next += 1;
            aoi = 0;
        } else {
            aoi += 1;
        }
        sum += aoi;
    }
    sum as f64 / schedule.horizon as f64
}

/// The schedule minimising the average age with at most `budget` updates.
///
/// Uses exactly `min(budget, horizon)` updates. The `horizon + 1` age
/// samples split into `n + 1` ramps whose lengths differ by at most one;
/// the first ramp starts at slot 0 and must span at least two samples
/// because updates cannot be placed before slot 1.
pub fn optimal_schedule(horizon: u32, budget: u64) -> Schedule {
    let n = budget.min(horizon as u64) as u32;
    if n == 0 {
        return Schedule {
            horizon,
            update_slots: Vec::new(),
        };
    }
    let points = horizon as u64 + 1;
    let parts = n as u64 + 1;
    let long = points % parts;
    let base = points / parts;

    let mut lengths = Vec::with_capacity(parts as usize);
    for _ in 0..long {
        lengths.push(base + 1);
    }
    for _ in long..parts {
        lengths.push(base);
    }
    if lengths[0] < 2 {
        // Only possible when every ramp has length one (n == horizon); the
        // final update then lands on the last slot, where it is idle.
        lengths[0] = 2;
        *lengths.last_mut().unwrap() = 0;
    }

    let mut update_slots = Vec::with_capacity(n as usize);
    let mut position = lengths[0] as u32 - 1;
    update_slots.push(position);
    for length in lengths.iter().take(n as usize).skip(1) {
        position += *length as u32;
        update_slots.push(position);
    }
    Schedule {
        horizon,
        update_slots,
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if result > ENUMERATION_LIMIT * 2 {
            return u128::MAX;
        }
    }
    result
}

/// Exhaustive minimum of [`schedule_average_aoi`] over every schedule with
/// at most `budget` updates. Test oracle for [`optimal_schedule`]; errors
/// when the search space exceeds [`ENUMERATION_LIMIT`].
pub fn brute_force_optimal(horizon: u32, budget: u64) -> Result<f64, Error> {
    let max_updates = budget.min(horizon as u64);
    let mut combinations: u128 = 0;
    for k in 0..=max_updates {
        combinations = combinations.saturating_add(binomial(horizon as u64, k));
    }
    if combinations > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            combinations,
            limit: ENUMERATION_LIMIT,
        });
    }

    let mut best = schedule_average_aoi(&Schedule {
        horizon,
        update_slots: Vec::new(),
    });
    for k in 1..=max_updates {
        let k = k as usize;
        let mut slots: Vec<u32> = (1..=k as u32).collect();
        loop {
            let candidate = Schedule {
                horizon,
                update_slots: slots.clone(),
            };
            let average = schedule_average_aoi(&candidate);
            if average < best {
                best = average;
            }
            if !next_combination(&mut slots, horizon) {
                break;
            }
        }
    }
    Ok(best)
}

/// Advance to the next k-combination of `[1, max]` in lexicographic order.
fn next_combination(slots: &mut [u32], max: u32) -> bool {
    let k = slots.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if slots[i] < max - (k - 1 - i) as u32 {
            slots[i] += 1;
            for j in i + 1..k {
                slots[j] = slots[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
