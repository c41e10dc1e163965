//! Shared fixtures for the criterion benchmarks.

use exshift_core::standard::{random_splits, torus7};
use exshift_core::SurfaceTriangulation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A torus on `n >= 7` vertices grown from the 7-vertex torus by random splits.
pub fn random_torus(n: usize, seed: u64) -> SurfaceTriangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_splits(&torus7(), n - 7, &mut rng)
}
