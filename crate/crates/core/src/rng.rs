//! Seeded, counter-based random streams.
//!
//! A [`RandomSource`] is identified by a 64-bit seed plus a path of stream
//! ids (for example run, iteration and player side). The path is hashed into
//! a ChaCha8 key, so a given `(seed, path)` produces the same sequence on every
//! platform regardless of how work is scheduled.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stream id tags used by the solvers.
pub const STREAM_ROW: u64 = 0;
pub const STREAM_COL: u64 = 1;
pub const STREAM_GAME: u64 = 0x6761_6d65;
pub const STREAM_SOLVER: u64 = 0x736f_6c76;

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    key: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn chacha_for(key: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    let mut h = key;
    for chunk in bytes.chunks_mut(8) {
        h = splitmix64(h);
        chunk.copy_from_slice(&h.to_le_bytes());
    }
    ChaCha8Rng::from_seed(bytes)
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        let key = splitmix64(seed ^ 0x005e_ed0f_5eed);
        RandomSource {
            seed,
            key,
            rng: chacha_for(key),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// An independent child stream. The child depends only on this source's
    /// identity and `ids`, never on how many values were drawn from it.
    pub fn derive(&self, ids: &[u64]) -> RandomSource {
        let key = ids
            .iter()
            .fold(self.key, |h, &id| splitmix64(h ^ splitmix64(id.wrapping_add(0x1d))));
        RandomSource {
            seed: self.seed,
            key,
            rng: chacha_for(key),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 bits of precision.
    pub fn uniform01(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `0..n` (`n > 0`), by rejection.
    pub fn below(&mut self, n: u64) -> u64 {
        let zone = u64::MAX - u64::MAX % n;
        loop {
            let x = self.next_u64();
            if x < zone {
                return x % n;
            }
        }
    }
}
