//! Samples critically irreducible triangulations on `n` vertices by random vertex splits of
//! shipped irreducibles, rejecting samples with a reducible critical region.
//!
//! Usage: `cargo run --release -p exshift-core --example sample_critically_irreducible -- <surface> <n> <tries> [seed]`

use std::collections::BTreeSet;

use exshift_core::catalog::shipped_irreducibles;
use exshift_core::critical::find_reducible_critical_region;
use exshift_core::standard::random_splits;
use exshift_core::{canonical_form, classify_maximal_faces, shift_complex, EngineConfig, Topology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let surface: Topology = args.get(1).map_or("klein", String::as_str).parse().expect("surface name");
    let n: usize = args.get(2).map_or(Ok(13), |s| s.parse()).expect("vertex count");
    let tries: usize = args.get(3).map_or(Ok(1000), |s| s.parse()).expect("tries");
    let seed: u64 = args.get(4).map_or(Ok(1), |s| s.parse()).expect("seed");
    let seeds = shipped_irreducibles(surface).expect("shipped catalog");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept = BTreeSet::new();
    for _ in 0..tries {
        let base = &seeds[rng.random_range(0..seeds.len())].triangulation;
        if base.n() > n {
            continue;
        }
        let k = random_splits(base, n - base.n(), &mut rng);
        if find_reducible_critical_region(&k).is_some() {
            continue;
        }
        if kept.insert(canonical_form(&k)) {
            let r = shift_complex(k.complex(), &EngineConfig::default()).expect("engine");
            println!("{:?} exact={} {:?}", classify_maximal_faces(&r, surface), r.is_exact(), r.maximal_faces());
        }
    }
    println!("{} distinct critically irreducible samples from {tries} tries", kept.len());
}
