use exshift_core::catalog::shipped_irreducibles;
use exshift_core::critical::{critical_regions, for_each_cycle, for_each_pinched_region};
use exshift_core::standard::random_splits;
use exshift_core::{
    combinatorial_critical_check, critical_report, fresh_specialization, reduce_to_irreducible,
    region_rows_independent, PrimeField, Region, RegionSearch, RegionShape, SurfaceTriangulation, Topology,
};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_surface(topology: Topology, seed: u64, extra: usize) -> SurfaceTriangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds = shipped_irreducibles(topology).unwrap();
    let base = &seeds.choose(&mut rng).unwrap().triangulation;
    random_splits(base, extra, &mut rng)
}

fn randomized_critical(region: &Region, seed: u64) -> bool {
    let n = region.vertices().max().unwrap() as usize;
    let spec = fresh_specialization(n.max(4), seed, PrimeField::default());
    region.is_internally_1_connected() && region_rows_independent(region, 4, &spec)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn critical_regions_obey_the_edge_bound(seed: u64, extra in 0usize..6) {
        for topology in [Topology::Torus, Topology::ProjectivePlane, Topology::KleinBottle] {
            let k = random_surface(topology, seed, extra);
            for r in critical_regions(&k, RegionSearch::for_topology(topology)) {
                prop_assert!(r.internal_edge_count <= 4 * r.internal_vertex_count || r.internal_vertex_count == 0);
                prop_assert!(r.region.is_internally_1_connected());
                prop_assert!(r.region.is_internally_connected() || r.internal_vertex_count == 0);
                prop_assert_eq!(r.is_irreducible, r.internal_edge_count == 4 * r.internal_vertex_count);
            }
        }
    }

    #[test]
    fn reducible_disks_contract_to_irreducible_ones(seed: u64, extra in 2usize..8) {
        let k = random_surface(Topology::Torus, seed, extra);
        for r in critical_regions(&k, RegionSearch::DISKS).into_iter().filter(|r| r.is_reducible()) {
            let (smaller, region, steps) = reduce_to_irreducible(&k, &r.region).unwrap();
            prop_assert_eq!(smaller.n() + steps.len(), k.n());
            prop_assert_eq!(region.boundary_count(), r.boundary_count);
            prop_assert_eq!(region.shape(), RegionShape::Disk);
            prop_assert_eq!(region.internal_vertex_count(), r.boundary_count - 3);
            prop_assert_eq!(steps.len(), r.internal_vertex_count + 3 - r.boundary_count);
            prop_assert!(critical_report(region, Vec::new()).is_irreducible);
        }
    }
}

#[test]
fn glued_regions_combinatorial_matches_randomized() {
    let (mut moebius, mut pinched, mut uncharacterized) = (0, 0, 0);
    for seed in 0..40u64 {
        let k = random_surface(Topology::KleinBottle, seed, (seed % 5) as usize);
        for_each_cycle(&k, 4, |cycle| {
            for sep in k.separate_by_cycle(cycle).unwrap() {
                if sep.region.shape() != RegionShape::MoebiusStrip || sep.region.boundary_count() != 4 {
                    continue;
                }
                match combinatorial_critical_check(&sep.region) {
                    Ok(combinatorial) => {
                        assert_eq!(combinatorial, randomized_critical(&sep.region, seed), "{:?}", sep.region.triangles());
                        moebius += 1;
                    }
                    Err(_) => {
                        assert_ne!(sep.region.diagonals().count(), 1);
                        uncharacterized += 1;
                    }
                }
            }
            true
        });
        for_each_pinched_region(&k, |region, _| {
            let combinatorial = combinatorial_critical_check(&region).unwrap();
            assert_eq!(combinatorial, randomized_critical(&region, seed), "{:?}", region.triangles());
            pinched += 1;
            true
        });
    }
    assert!(moebius > 0 && pinched > 0 && uncharacterized > 0, "{moebius} strips, {pinched} pinched, {uncharacterized} other");
}
