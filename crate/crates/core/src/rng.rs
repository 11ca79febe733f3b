//! Seeding utilities. Every sampler in the crate takes an explicit `u64`
//! seed; replication r of an experiment uses the split stream
//! `fan_out(seed, r)`, so runs are reproducible under any thread count.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic per-replication seed stream.
pub fn fan_out(seed: u64, replication: u64) -> u64 {
    mix(seed.wrapping_add(replication.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Seeded generator with a platform-independent stream. The 256-bit ChaCha
/// key is expanded from the seed with SplitMix64 so different seeds give
/// uncorrelated streams.
pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    let mut state = seed;
    for chunk in key.chunks_exact_mut(8) {
        state = state.wrapping_add(GOLDEN_GAMMA);
        chunk.copy_from_slice(&mix(state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}
