//! Enumerates the critically irreducible triangulations on `n` vertices by splitting every
//! triangulation on `n - 1` vertices, then shifts them with the engine.
//!
//! Usage: `cargo run --release -p exshift-core --example critically_irreducible -- <surface> <n>`

use std::time::Instant;

use exshift_core::catalog::{enumerate_with, shipped_irreducibles};
use exshift_core::critical::find_reducible_critical_region;
use exshift_core::{classify_maximal_faces, io, shift_complex, EngineConfig, Topology};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let surface: Topology = args.get(1).map_or("torus", String::as_str).parse().expect("surface name");
    let n: usize = args.get(2).map_or(Ok(11), |s| s.parse()).expect("vertex count");
    let clock = Instant::now();
    let seeds = shipped_irreducibles(surface).expect("shipped catalog");
    let keep = |k: &exshift_core::SurfaceTriangulation| find_reducible_critical_region(k).is_none();
    let entries: Vec<_> = enumerate_with(surface, &seeds, n, None, &keep)
        .expect("enumeration")
        .into_iter()
        .filter(|e| e.n() == n)
        .collect();
    eprintln!("{} critically irreducible on {n} vertices in {:.1?}", entries.len(), clock.elapsed());
    for e in &entries {
        let r = shift_complex(e.triangulation.complex(), &EngineConfig::default()).expect("engine");
        eprintln!("{}: {:?} {:?} exact={}", e.name, classify_maximal_faces(&r, surface), r.maximal_faces(), r.is_exact());
    }
    print!("{}", io::write_tri(entries.iter().map(|e| (Some(e.name.as_str()), e.triangulation.triangles()))));
}
