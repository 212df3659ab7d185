//! Seed plumbing. Every stochastic routine takes a `u64` seed and builds a
//! ChaCha stream from it; batch routines derive per-task seeds from a master
//! seed and the task index so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer applied to `master ^ golden * (index + 1)`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index.wrapping_add(1));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Two-level derivation for grids: `(master, cell, replicate)`.
pub fn derive_seed2(master: u64, outer: u64, inner: u64) -> u64 {
    derive_seed(derive_seed(master, outer), inner)
}
