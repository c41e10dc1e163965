//! Times `shift_torus` on random tori grown by vertex splits.
//!
//! Usage: `cargo run --release -p exshift-core --example scaling -- <n>...`

use std::time::Instant;

use exshift_core::standard::{random_splits, torus7};
use exshift_core::shift_torus;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let sizes: Vec<usize> = std::env::args().skip(1).map(|s| s.parse().expect("vertex count")).collect();
    for n in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let k = random_splits(&torus7(), n - 7, &mut rng);
        let clock = Instant::now();
        let r = shift_torus(&k).expect("torus shift");
        let t = r.trace.as_ref().expect("trace");
        println!("n={n}: {:.3?}, {} contractions, prime stage {}, end stage {}", clock.elapsed(), t.steps.len(), t.prime_vertices, t.final_vertices);
    }
}
