//! Seeds and the pseudo-random generator used by every randomized routine.
//!
//! All randomness comes from `ChaCha8Rng` (rand_chacha 0.3) initialised with
//! `SeedableRng::seed_from_u64`. Child seeds for sub-tasks are derived with
//! the SplitMix64 finalizer, so a campaign is fixed by its base seed. Both
//! choices are part of the output format: changing either changes every
//! generated instance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// A 64-bit seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSeed(pub u64);

impl GenSeed {
    pub fn rng(self) -> Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Deterministic child seed for stream `index`.
    pub fn derive(self, index: u64) -> GenSeed {
        GenSeed(splitmix64(
            self.0 ^ splitmix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)),
        ))
    }

    /// Child seed keyed by a sequence of words.
    pub fn derive_all(self, words: &[u64]) -> GenSeed {
        words.iter().fold(self, |s, &w| s.derive(w))
    }
}

impl From<u64> for GenSeed {
    fn from(v: u64) -> Self {
        GenSeed(v)
    }
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
