//! Seeding helpers.
//!
//! Every random stream in the crate is a `ChaCha8Rng` built from a single
//! `u64`, which keeps results identical across platforms. Per-trial seeds are
//! derived with [`derive_seed`], a SplitMix64 chain over the trial key, so a
//! trial's randomness depends only on its key and never on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// FNV-1a over a label, used to fold mode names into seeds.
pub fn label_hash(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Folds `words` into `master` one at a time: `h <- mix64(h ^ word)`.
pub fn derive_seed(master: u64, words: &[u64]) -> u64 {
    words.iter().fold(mix64(master), |h, &w| mix64(h ^ w))
}
