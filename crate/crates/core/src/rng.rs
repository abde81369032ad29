// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! Seed derivation.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded from a `u64`.
//! Child seeds are derived from a parent seed and a list of integer labels
//! (generation number, individual index, ...) with the SplitMix64 finalizer,
//! so any stream can be recreated without replaying the ones before it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// SplitMix64 output function.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds `labels` into `seed`, one mix per label.
pub fn derive_seed(seed: u64, labels: &[u64]) -> u64 {
    labels.iter().fold(mix64(seed), |acc, &label| mix64(acc ^ mix64(label)))
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn derived_rng(seed: u64, labels: &[u64]) -> Rng {
    rng_from_seed(derive_seed(seed, labels))
}
