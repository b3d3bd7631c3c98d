use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

/// SplitMix64 stream with portable conversions.
///
/// The raw generator is Vigna's SplitMix64: state advances by
/// `0x9E3779B97F4A7C15` and each output goes through the standard
/// `(30, 27, 31)` xor-shift/multiply finalizer. Floats take the top 53 bits,
/// `(x >> 11) · 2⁻⁵³`, and bounded integers use `(x · bound) >> 64`. Ports that
/// follow these three rules reproduce every draw bit for bit.
#[derive(Debug, Clone)]
pub struct StreamRng(SplitMix64);

impl StreamRng {
    pub fn new(seed: u64) -> Self {
        StreamRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[0, bound)`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        debug_assert!(bound > 0);
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }

    /// Fisher-Yates, walking from the back.
    pub fn shuffle<T>(&mut self, v: &mut [T]) {
        for k in (1..v.len()).rev() {
            let j = self.below(k + 1);
            v.swap(k, j);
        }
    }
}
