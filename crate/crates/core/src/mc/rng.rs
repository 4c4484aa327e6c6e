//! Counter-based Gaussian draws: the pair used at `(path, step)` depends on
//! `(seed, path, step)` alone, so any evaluation order gives the same bits.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 32-bit words consumed per step (two `u64` draws).
const WORDS_PER_STEP: u128 = 4;

fn box_muller(x: u64, y: u64) -> [f64; 2] {
    // u1 in (0, 1] keeps the logarithm finite.
    let u1 = ((x >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    let u2 = (y >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
    [r * c, r * s]
}

/// Standard normal pair for `(seed, path, step)`.
pub fn gaussian_pair(seed: u64, path: u64, step: u64) -> [f64; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path);
    rng.set_word_pos(WORDS_PER_STEP * step as u128);
    box_muller(rng.next_u64(), rng.next_u64())
}

/// Sequential reader of one path's stream; yields the same pairs as
/// [`gaussian_pair`] for steps `0, 1, 2, …`.
pub struct PathNoise {
    rng: ChaCha8Rng,
}

impl PathNoise {
    pub fn new(seed: u64, path: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(path);
        Self { rng }
    }
}

impl Iterator for PathNoise {
    type Item = [f64; 2];

    fn next(&mut self) -> Option<[f64; 2]> {
        let x = self.rng.next_u64();
        let y = self.rng.next_u64();
        Some(box_muller(x, y))
    }
}
