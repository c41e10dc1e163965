use exshift_core::catalog::shipped_irreducibles;
use exshift_core::lex::is_shifted;
use exshift_core::standard::{random_splits, stacked_sphere};
use exshift_core::{
    betti_numbers, canonical_form, shift_complex, CatalogEntry, EngineConfig, SurfaceShifter, SurfaceTriangulation,
    Topology,
};
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seeds() -> Vec<CatalogEntry> {
    [Topology::Torus, Topology::ProjectivePlane, Topology::KleinBottle]
        .into_iter()
        .flat_map(|t| shipped_irreducibles(t).unwrap())
        .filter(|e| e.n() <= 9)
        .collect()
}

fn surface(seed: u64, extra: usize) -> SurfaceTriangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = seeds().choose(&mut rng).unwrap().triangulation.clone();
    random_splits(&base, extra, &mut rng)
}

fn sorted(k: &SurfaceTriangulation) -> Vec<[u32; 3]> {
    let mut t = k.triangles().to_vec();
    t.sort_unstable();
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contracting_a_split_edge_restores_the_triangulation(seed: u64, extra in 0usize..6, pick: usize) {
        let k = surface(seed, extra);
        let params = k.split_parameters();
        let p = params[pick % params.len()];
        let split = k.split_by_parameter(p);
        prop_assert_eq!(split.n(), k.n() + 1);
        prop_assert_eq!(split.topology(), k.topology());
        let back = split.contract(p.0, split.n() as u32).unwrap();
        prop_assert_eq!(sorted(&back), sorted(&k));
    }

    #[test]
    fn canonical_form_ignores_labels(seed: u64, extra in 0usize..8) {
        let k = surface(seed, extra);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5a5);
        let mut perm: Vec<u32> = (1..=k.n() as u32).collect();
        perm.sort_by_key(|_| rng.random::<u64>());
        let relabeled = k.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&relabeled), canonical_form(&k));
        let rebuilt = SurfaceTriangulation::from_triangles(&canonical_form(&k).triangles()).unwrap();
        prop_assert_eq!(canonical_form(&rebuilt), canonical_form(&k));
    }

    #[test]
    fn surface_betti_numbers_over_two_primes(seed: u64, extra in 0usize..6) {
        let k = surface(seed, extra);
        let expected = k.topology().betti().to_vec();
        prop_assert_eq!(betti_numbers(k.complex(), 3).unwrap(), expected.clone());
        prop_assert_eq!(betti_numbers(k.complex(), 1_000_003).unwrap(), expected);
    }

    #[test]
    fn engine_shift_is_seed_independent(seed: u64, extra in 0usize..3) {
        let k = surface(seed, extra);
        let a = shift_complex(k.complex(), &EngineConfig::with_seed(seed)).unwrap();
        let b = shift_complex(k.complex(), &EngineConfig::with_seed(seed.wrapping_add(1))).unwrap();
        prop_assert!(a.same_faces(&b));
        prop_assert!(is_shifted(&a.faces_by_dim));
        prop_assert_eq!(a.betti(), k.topology().betti().to_vec());
        prop_assert!(a.contains(&[1, 3, k.n() as u32]));
    }

    #[test]
    fn surface_path_matches_engine(seed: u64, extra in 0usize..4) {
        let k = surface(seed, extra);
        let config = EngineConfig::default();
        let fast = SurfaceShifter::new(config).shift(&k).unwrap();
        let generic = shift_complex(k.complex(), &config).unwrap();
        prop_assert!(fast.same_faces(&generic), "{:?} vs {:?}", fast.maximal_faces(), generic.maximal_faces());
        prop_assert!(fast.is_exact());
    }

    #[test]
    fn stacked_spheres_are_spheres(seed: u64, n in 4usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = stacked_sphere(n, &mut rng);
        prop_assert_eq!(k.topology(), Topology::Sphere);
        prop_assert_eq!(k.complex().f_vector(), vec![n, 3 * n - 6, 2 * n - 4]);
    }
}
