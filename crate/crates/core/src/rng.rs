//! Seeded uniform streams.
//!
//! A [`SeedSpec`] names a family of substreams. Each sampler draws its
//! `U`, `V` and `B` inputs from separate substreams, so changing one input
//! (the mixture weight, say) never shifts the others.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Seed and stream selector. Identical values reproduce identical draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SeedSpec {
    pub seed: u64,
    pub stream: u64,
}

impl SeedSpec {
    pub const fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }
}

/// Substream offsets used by the samplers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Substream {
    U = 0,
    V = 1,
    B = 2,
}

const KEY_TAG: &[u8; 16] = b"coskew/substream";

/// Uniform draws on the open interval (0, 1).
pub struct UniformStream {
    rng: ChaCha8Rng,
}

impl UniformStream {
    pub fn new(seed: SeedSpec, substream: Substream) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.seed.to_le_bytes());
        key[8..16].copy_from_slice(&(substream as u64).to_le_bytes());
        key[16..].copy_from_slice(KEY_TAG);
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(seed.stream);
        Self { rng }
    }

    /// Next draw `(k + 1/2) * 2^-52` for a uniform 52-bit `k`. Both `u` and
    /// `1 - u` are exact and lie strictly inside (0, 1), and `u == 1/2` never
    /// occurs.
    #[inline]
    pub fn next_open01(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
        let k = self.rng.next_u64() >> 12;
        (k as f64 + 0.5) * SCALE
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        for x in out {
            *x = self.next_open01();
        }
    }
}
