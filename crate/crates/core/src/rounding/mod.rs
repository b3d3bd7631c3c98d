//! Rounding fractional solutions to permutation sequences.

mod greedy;
mod greedy_lp;
mod randomized;
mod rng;

pub use greedy::{greedy_round, move_to_front};
pub use greedy_lp::greedy_lp_solve;
pub use randomized::{randomized_index, randomized_round, RoundingSeedState};
pub use rng::StreamRng;
