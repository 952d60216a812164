//! Reproducible random streams.
//!
//! Every stream is a xoshiro256++ generator whose 256-bit state is expanded
//! from a single `u64` with SplitMix64 (`Xoshiro256PlusPlus::seed_from_u64`).
//! Replicate `r` of a run seeded with `seed` uses the stream seeded with
//! [`replicate_seed`]`(seed, r)`, so replicates can be computed in any order
//! or in parallel without changing the result.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub type StreamRng = Xoshiro256PlusPlus;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output finalizer.
pub fn mix64(mut x: u64) -> u64 {
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed of replicate `r`: `mix64(mix64(seed) ^ ((r + 1) · γ))` with γ the
/// SplitMix64 increment `0x9E3779B97F4A7C15`.
pub fn replicate_seed(seed: u64, r: u64) -> u64 {
    mix64(mix64(seed) ^ r.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA))
}

pub fn stream(seed: u64) -> StreamRng {
    StreamRng::seed_from_u64(seed)
}

/// Uniform draw on the open interval (0, 1) from the top 52 bits:
/// `(⌊x / 2¹²⌋ + ½) · 2⁻⁵²`. With 53 bits the largest value would round to 1.
pub fn open_unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    const SCALE: f64 = 1.0 / (1u64 << 52) as f64;
    ((rng.next_u64() >> 12) as f64 + 0.5) * SCALE
}
