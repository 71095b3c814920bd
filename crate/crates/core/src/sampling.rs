//! Deterministic sampling of small integer combinations.
//!
//! Universally quantified axioms are checked on generators plus
//! [`SAMPLE_COUNT`] pseudo-random combinations with coefficients in
//! `[-SAMPLE_BOUND, SAMPLE_BOUND]`, drawn from a ChaCha stream with a fixed
//! seed. The policy is part of the validator contract: the same inputs
//! always see the same samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SAMPLE_SEED: u64 = 0x5eed_0001;
pub const SAMPLE_COUNT: usize = 64;
pub const SAMPLE_BOUND: i64 = 2;

/// Seeded sampler of coefficient vectors.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// The default validator stream.
    pub fn standard() -> Self {
        Self::new(SAMPLE_SEED)
    }

    pub fn coeffs(&mut self, len: usize) -> Vec<i64> {
        (0..len).map(|_| self.rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)).collect()
    }

    /// A random word over `len` letters: pairs `(letter, ±1)` of given length.
    pub fn word(&mut self, letters: usize, length: usize) -> Vec<(usize, i64)> {
        (0..length)
            .map(|_| {
                let g = self.rng.gen_range(0..letters);
                let e = if self.rng.gen_bool(0.5) { 1 } else { -1 };
                (g, e)
            })
            .collect()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}
