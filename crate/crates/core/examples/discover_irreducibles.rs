//! Searches for irreducible triangulations by random splits followed by random contractions
//! and prints every isomorphism class found in the `.tri` catalog format.
//!
//! Usage: `cargo run --release -p exshift-core --example discover_irreducibles -- <surface> <trials> [seed]`

use std::collections::BTreeMap;

use exshift_core::standard;
use exshift_core::{canonical_form, CanonicalForm, SurfaceTriangulation, Topology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let surface: Topology = args.get(1).map_or("torus", String::as_str).parse().expect("surface name");
    let trials: usize = args.get(2).map_or(Ok(1000), |s| s.parse()).expect("trial count");
    let seed: u64 = args.get(3).map_or(Ok(1), |s| s.parse()).expect("seed");
    let start = match surface {
        Topology::Torus => standard::torus7(),
        Topology::ProjectivePlane => standard::rp2_6(),
        Topology::KleinBottle => standard::klein9(),
        other => panic!("no starting triangulation for {other}"),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: BTreeMap<(usize, CanonicalForm), SurfaceTriangulation> = BTreeMap::new();
    let mut pool = vec![start];
    let mut last_new = 0;
    for trial in 0..trials {
        let base = pool[rng.random_range(0..pool.len())].clone();
        let splits = rng.random_range(1..=25);
        let big = standard::random_splits(&base, splits, &mut rng);
        let small = standard::random_contractions(&big, usize::MAX, &mut rng);
        let key = (small.n(), canonical_form(&small));
        if !found.contains_key(&key) {
            last_new = trial;
            eprintln!("trial {trial}: new irreducible on {} vertices ({} so far)", small.n(), found.len() + 1);
            found.insert(key, small.clone());
            pool.push(small);
        }
    }
    println!("# Irreducible triangulations of the {surface}.");
    println!("# Found by random vertex splits followed by random contractions:");
    println!("# {trials} trials from seed {seed}; the last new class appeared at trial {last_new}.");
    println!("# Each entry is written in its canonical labeling.");
    for (i, ((n, code), _)) in found.iter().enumerate() {
        println!();
        println!("name: {}-{n}-{}", surface_slug(surface), i + 1);
        for t in code.triangles() {
            println!("{} {} {}", t[0], t[1], t[2]);
        }
    }
}

fn surface_slug(t: Topology) -> &'static str {
    match t {
        Topology::Torus => "torus",
        Topology::ProjectivePlane => "rp2",
        Topology::KleinBottle => "klein",
        _ => "surface",
    }
}
