//! Enumerates a surface up to a vertex bound, builds the engine tables, and compares the
//! surface algorithm with the engine on every entry.
//!
//! Usage: `cargo run --release -p exshift-core --example census -- <surface> <max_n>`

use std::time::Instant;

use exshift_core::catalog::{build_tables, enumerate_by_splits, shipped_irreducibles, table_facts};
use exshift_core::{EngineConfig, SurfaceShifter, Topology};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let surface: Topology = args.get(1).map_or("torus", String::as_str).parse().expect("surface name");
    let max_n: usize = args.get(2).map_or(Ok(9), |s| s.parse()).expect("vertex bound");
    let clock = Instant::now();
    let seeds = shipped_irreducibles(surface).expect("shipped catalog");
    let mut entries = enumerate_by_splits(&seeds, max_n).expect("enumeration");
    let mut per_n = std::collections::BTreeMap::new();
    for e in &entries {
        *per_n.entry(e.n()).or_insert(0usize) += 1;
    }
    println!("enumerated {:?} in {:.1?}", per_n, clock.elapsed());
    let clock = Instant::now();
    let config = EngineConfig::default();
    let store = build_tables(&mut entries, &config).expect("tables");
    println!("tables: {} results in {:.1?}", store.len(), clock.elapsed());
    let facts = table_facts(&entries);
    println!("classes {:?}; non-prefix {}; violations {}", facts.classes, facts.non_prefix.len(), facts.violations.len());
    let mut ci = std::collections::BTreeMap::new();
    for c in facts.non_prefix.iter().filter(|c| c.critically_irreducible) {
        *ci.entry((c.n, c.class.map(|x| x.to_string()), c.has_56)).or_insert(0usize) += 1;
    }
    println!("critically irreducible non-prefix (n, class, has (5,6)): {ci:?}");
    for v in facts.violations.iter().take(10) {
        println!("  violation: {v}");
    }
    let clock = Instant::now();
    let shifter = SurfaceShifter::new(config);
    let mut mismatches = 0;
    for e in &entries {
        match shifter.shift(&e.triangulation) {
            Ok(r) if r.same_faces(e.shifting.as_ref().unwrap()) => {}
            Ok(r) => {
                mismatches += 1;
                if mismatches <= 5 {
                    println!("  mismatch {}: surface {:?} engine {:?}", e.name, r.maximal_faces(), e.shifting.as_ref().unwrap().maximal_faces());
                    println!("    trace {:?}", r.trace.as_ref().map(|t| &t.decisions));
                }
            }
            Err(err) => {
                mismatches += 1;
                if mismatches <= 5 {
                    println!("  error {}: {err}", e.name);
                }
            }
        }
    }
    println!("surface vs engine: {mismatches} mismatches over {} entries in {:.1?}", entries.len(), clock.elapsed());
}
