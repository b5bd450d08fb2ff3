//! Counter-based random streams for Monte Carlo scans.
//!
//! Every sample gets its own ChaCha8 stream keyed by (seed, sample index),
//! so draws never depend on scheduling or on how many samples ran before.
//! The 32-byte ChaCha key is the little-endian seed in bytes 0..8, the
//! little-endian sample index in bytes 8..16, and zeros elsewhere; the
//! stream position starts at zero. `docs/rng.md` freezes test vectors so
//! other implementations can reproduce the streams exactly.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub struct SampleRng {
    inner: ChaCha8Rng,
}

impl SampleRng {
    pub fn new(seed: u64, sample_index: u64) -> Self {
        let mut key = [0u8; 32];
        key[0..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&sample_index.to_le_bytes());
        Self {
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    /// Uniform on the half-open interval (0, 1]: the top 53 bits of the next
    /// u64, shifted into the unit interval, plus one ulp step so zero is
    /// excluded (log of the result is always finite).
    pub fn uniform(&mut self) -> f64 {
        ((self.inner.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// One Box-Muller pair of independent standard normal deviates.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        (r * theta.cos(), r * theta.sin())
    }
}
