//! Deterministic, schedule-independent random substreams.
//!
//! Every Monte Carlo unit of work derives its own generator from
//! `(seed, index...)` through the SplitMix64 avalanche function, so results do
//! not depend on how replicates are scheduled across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Full-avalanche 64-bit
/// mixing: every output bit depends on every input bit.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive a generator for the substream identified by `ids` under `seed`.
///
/// The stream key is the left fold `state = mix64(state ^ mix64(id))`
/// starting from `mix64(seed)`; the folded key seeds a ChaCha8 stream.
pub fn substream(seed: u64, ids: &[u64]) -> ChaCha8Rng {
    let mut state = mix64(seed);
    for &id in ids {
        state = mix64(state ^ mix64(id));
    }
    ChaCha8Rng::seed_from_u64(state)
}
