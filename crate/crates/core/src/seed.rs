//! Seed derivation.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded with
//! `seed_from_u64`. Seeds built from several fields are folded through the
//! SplitMix64 finalizer one field at a time, so they are portable and stable
//! across platforms and thread counts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The random generator used throughout the crate.
pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds `fields` into one seed, in order.
pub fn mix(fields: &[u64]) -> u64 {
    fields
        .iter()
        .fold(0x6A09_E667_F3BC_C908, |acc, &f| splitmix64(acc ^ splitmix64(f)))
}
