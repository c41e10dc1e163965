//! Exterior shifting through a random specialization of the generic matrix.
//!
//! Row `i` of the specialization `X` is `f_i = sum_j x_ij e_j`. The coordinate of
//! `f_sigma` at `e_tau` is the minor `det X[sigma, tau]`. A specialization can only lose
//! rank relative to the generic matrix, so the greedy lex basis it yields dominates the
//! true one elementwise; certification exploits that direction.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::complex::{without, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{Echelon, PrimeField};
use crate::homology::rational_top_betti;
use crate::lex::{self, tail_lex};
use crate::region::Region;
use crate::result::{Certification, ShiftResult};

/// An `n x n` matrix over `F_p` with entries reproducible from a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericSpecialization {
    n: usize,
    seed: u64,
    field: PrimeField,
    /// Row-major; `entries[(i - 1) * n + (j - 1)] = x_ij`.
    entries: Vec<u64>,
}

/// Draws a specialization of size `n` from `seed`.
pub fn fresh_specialization(n: usize, seed: u64, field: PrimeField) -> GenericSpecialization {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let p = field.modulus();
    let entries = (0..n * n).map(|_| rng.random_range(0..p)).collect();
    GenericSpecialization { n, seed, field, entries }
}

/// The `index`-th seed derived from `base` (SplitMix64 steps).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl GenericSpecialization {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `x_ij` for `1 <= i, j <= n`.
    #[inline]
    pub fn entry(&self, i: u32, j: u32) -> u64 {
        self.entries[(i as usize - 1) * self.n + (j as usize - 1)]
    }

    /// `det X[rows, cols]` for index lists of equal length.
    pub fn minor(&self, rows: &[u32], cols: &[u32]) -> u64 {
        let f = self.field;
        let x = |r: usize, c: usize| self.entry(rows[r], cols[c]);
        match rows.len() {
            0 => 1,
            1 => x(0, 0),
            2 => f.sub(f.mul(x(0, 0), x(1, 1)), f.mul(x(0, 1), x(1, 0))),
            3 => {
                let a = f.mul(x(0, 0), f.sub(f.mul(x(1, 1), x(2, 2)), f.mul(x(1, 2), x(2, 1))));
                let b = f.mul(x(0, 1), f.sub(f.mul(x(1, 0), x(2, 2)), f.mul(x(1, 2), x(2, 0))));
                let c = f.mul(x(0, 2), f.sub(f.mul(x(1, 0), x(2, 1)), f.mul(x(1, 1), x(2, 0))));
                f.add(f.sub(a, b), c)
            }
            size => {
                let m = (0..size).flat_map(|r| (0..size).map(move |c| (r, c))).map(|(r, c)| x(r, c)).collect();
                f.det(m, size)
            }
        }
    }
}

/// Greedy lex scan for the `d`-faces of the shifted complex.
pub fn exterior_shift(k: &SimplicialComplex, d: usize, spec: &GenericSpecialization) -> Result<Vec<Face>> {
    if d > k.dim() {
        return Err(Error::DimensionTooLarge { requested: d, dim: k.dim() });
    }
    if spec.n() != k.n() {
        return Err(Error::SpecializationSize { spec: spec.n(), needed: k.n() });
    }
    let columns = k.faces(d);
    let target = columns.len();
    let mut basis = Echelon::new(spec.field());
    let mut kept = Vec::with_capacity(target);
    for sigma in lex::subsets(k.n(), d + 1) {
        if kept.len() == target {
            break;
        }
        let row: Vec<u64> = columns.iter().map(|tau| spec.minor(&sigma, tau)).collect();
        if basis.insert(row) {
            kept.push(sigma);
        }
    }
    if kept.len() < target {
        return Err(Error::DegenerateSpecialization { seed: spec.seed(), dim: d });
    }
    Ok(kept)
}

/// Whether the `d`-faces of a computed shift are forced, given the complex.
///
/// Lex prefixes are forced. In the top dimension, with the rational Betti number `b`
/// known exactly, a family whose faces through vertex 1 and faces avoiding vertex 1 are
/// each lex prefixes of their kind, with exactly `b` of the latter, is also forced.
pub fn certify_dim(faces: &[Face], d: usize, k: &SimplicialComplex) -> bool {
    let n = k.n();
    if lex::is_lex_prefix(faces, n) {
        return true;
    }
    if d != k.dim() || d == 0 {
        return false;
    }
    let Some(b) = rational_top_betti(k) else {
        return false;
    };
    let (with_one, without_one): (Vec<&Face>, Vec<&Face>) = faces.iter().partition(|f| f[0] == 1);
    if without_one.len() != b {
        return false;
    }
    let with_ok = lex::subsets(n, d + 1).filter(|s| s[0] == 1).zip(&with_one).all(|(s, f)| &&s == f);
    let without_ok = lex::subsets(n, d + 1).filter(|s| s[0] != 1).zip(&without_one).all(|(s, f)| &&s == f);
    with_ok && without_ok
}

/// Marks every dimension of `result` that [`certify_dim`] accepts as certified.
pub fn certify(mut result: ShiftResult, k: &SimplicialComplex) -> ShiftResult {
    for d in 0..result.faces_by_dim.len() {
        if certify_dim(&result.faces_by_dim[d], d, k) {
            result.certified_by_dim[d] = Certification::Certified;
        }
    }
    result
}

/// Parameters of the generic engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub field: PrimeField,
    pub seed: u64,
    /// Fresh seeds used to confirm an uncertified dimension.
    pub confirm_seeds: usize,
    /// Fresh seeds tried after a degenerate specialization.
    pub degenerate_retries: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self { field: PrimeField::default(), seed: 0x5eed, confirm_seeds: 3, degenerate_retries: 8 }
    }
}

impl EngineConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

/// All dimensions of the shift from one non-degenerate specialization, trying derived seeds.
fn shift_all_dims(k: &SimplicialComplex, config: &EngineConfig, seeds: &mut Vec<u64>, counter: &mut u64) -> Result<Vec<Vec<Face>>> {
    let mut last_err = None;
    for _ in 0..=config.degenerate_retries {
        let seed = if *counter == 0 { config.seed } else { derive_seed(config.seed, *counter) };
        *counter += 1;
        seeds.push(seed);
        let spec = fresh_specialization(k.n(), seed, config.field);
        match (0..=k.dim()).map(|d| exterior_shift(k, d, &spec)).collect::<Result<Vec<_>>>() {
            Ok(faces) => return Ok(faces),
            Err(e @ Error::DegenerateSpecialization { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

/// Computes the shift of `k` with certification and the multi-seed protocol.
pub fn shift_complex(k: &SimplicialComplex, config: &EngineConfig) -> Result<ShiftResult> {
    let mut seeds = Vec::new();
    let mut counter = 0;
    let primary = shift_all_dims(k, config, &mut seeds, &mut counter)?;
    let mut result = ShiftResult {
        n: k.n(),
        modulus: Some(config.field.modulus()),
        seeds: Vec::new(),
        certified_by_dim: vec![Certification::MonteCarlo(0); primary.len()],
        faces_by_dim: primary,
        trace: None,
    };
    result = certify(result, k);
    let open: Vec<usize> = (0..result.faces_by_dim.len()).filter(|&d| !result.certified_by_dim[d].is_exact()).collect();
    if !open.is_empty() {
        let mut runs: Vec<Vec<Vec<Face>>> = Vec::new();
        for _ in 0..config.confirm_seeds {
            runs.push(shift_all_dims(k, config, &mut seeds, &mut counter)?);
        }
        for d in open {
            let mut candidates: Vec<&Vec<Face>> = vec![&result.faces_by_dim[d]];
            candidates.extend(runs.iter().map(|r| &r[d]));
            let chosen = least_candidate(&candidates).clone();
            let agreeing = runs.iter().filter(|r| r[d] == chosen).count();
            result.faces_by_dim[d] = chosen;
            result.certified_by_dim[d] = Certification::MonteCarlo(agreeing);
        }
    }
    result.seeds = seeds;
    Ok(result)
}

/// A candidate dominated elementwise by all others if one exists, else the lex-least.
fn least_candidate<'a>(candidates: &[&'a Vec<Face>]) -> &'a Vec<Face> {
    let below = |a: &Vec<Face>, b: &Vec<Face>| a.iter().zip(b).all(|(x, y)| x <= y);
    candidates
        .iter()
        .find(|a| candidates.iter().all(|b| below(a, b)))
        .or_else(|| candidates.iter().min())
        .expect("nonempty candidates")
}

/// `f_d(K)` minus the rank of the matrix of `psi^d_{K,k}` over the specialization.
///
/// Rows are the `d`-faces `sigma`; columns are pairs `(i, v)` with `d <= i <= k`. The entry
/// is the coefficient of `e_sigma` in `f_{[d-1] + i} ^ e_v`.
pub fn psi_corank(k: &SimplicialComplex, level: usize, d: usize, spec: &GenericSpecialization) -> Result<usize> {
    let n = k.n();
    if !(n >= level && level >= d && d >= 1) {
        return Err(Error::ParameterOrder { n, k: level, d });
    }
    if spec.n() < n {
        return Err(Error::SpecializationSize { spec: spec.n(), needed: n });
    }
    let field = spec.field();
    let width = (level - d + 1) * n;
    let mut basis = Echelon::new(field);
    let mut minors: HashMap<(u32, Face), u64> = HashMap::new();
    for sigma in k.faces(d) {
        let mut row = vec![0u64; width];
        for (j, &v) in sigma.iter().enumerate() {
            let rest = without(sigma, j);
            let negate = (d - j) % 2 == 1;
            for (slot, i) in (d..=level).enumerate() {
                let mut f_rows: Vec<u32> = (1..d as u32).collect();
                f_rows.push(i as u32);
                let det = *minors.entry((i as u32, rest.clone())).or_insert_with(|| spec.minor(&f_rows, &rest));
                row[slot * n + v as usize - 1] = if negate { field.neg(det) } else { det };
            }
        }
        basis.insert(row);
    }
    Ok(k.faces(d).len() - basis.rank())
}

/// The face whose tail the corank of `psi^d_{K,k}` counts.
pub fn corank_anchor(level: usize, d: usize) -> Face {
    let top = [level as u32 + 1, level as u32 + 2];
    match d {
        1 => top.to_vec(),
        _ => {
            let mut f: Face = (1..d as u32).collect();
            f.extend(top);
            f
        }
    }
}

/// Checks the corank of `psi^d_{K,k}` against the tail of the shift, retrying once with a
/// fresh seed; persistent disagreement is an error.
pub fn check_corank_tail(k: &SimplicialComplex, level: usize, d: usize, config: &EngineConfig) -> Result<()> {
    let mut last = (0, 0);
    for attempt in 0..2 {
        let seed = derive_seed(config.seed, 1000 + attempt);
        let spec = fresh_specialization(k.n(), seed, config.field);
        let faces = match exterior_shift(k, d, &spec) {
            Ok(f) => f,
            Err(Error::DegenerateSpecialization { .. }) => continue,
            Err(e) => return Err(e),
        };
        let corank = psi_corank(k, level, d, &spec)?;
        let tail = tail_lex(&faces, &corank_anchor(level, d)).len();
        if corank == tail {
            return Ok(());
        }
        last = (corank, tail);
    }
    Err(Error::CorankMismatch { d, k: level, corank: last.0, tail: last.1 })
}

/// Rows: internal edges of `region`; columns: `(i, v)` for internal vertices `v`, `1 <= i <= k`.
pub fn region_matrix(region: &Region, level: usize, spec: &GenericSpecialization) -> Vec<Vec<u64>> {
    let internal: Vec<u32> = region.internal_vertices().collect();
    let col: HashMap<u32, usize> = internal.iter().enumerate().map(|(p, &v)| (v, p)).collect();
    let field = spec.field();
    region
        .internal_edges()
        .map(|[a, b]| {
            let mut row = vec![0u64; internal.len() * level];
            for i in 1..=level as u32 {
                let base = (i as usize - 1) * internal.len();
                if let Some(&p) = col.get(&a) {
                    row[base + p] = field.neg(spec.entry(i, b));
                }
                if let Some(&p) = col.get(&b) {
                    row[base + p] = spec.entry(i, a);
                }
            }
            row
        })
        .collect()
}

/// Rank of the region matrix over one specialization.
pub fn region_matrix_rank(region: &Region, level: usize, spec: &GenericSpecialization) -> usize {
    spec.field().rank(&region_matrix(region, level, spec))
}

/// Whether the rows of the region matrix are independent; a dependent answer is retried
/// with two further derived seeds before it is reported.
pub fn region_rows_independent(region: &Region, level: usize, spec: &GenericSpecialization) -> bool {
    let rows = region.internal_edge_count();
    if rows == 0 {
        return true;
    }
    let needed = region.vertices().max().unwrap_or(0).max(level as u32) as usize;
    for attempt in 0..3u64 {
        let seed = if attempt == 0 { spec.seed() } else { derive_seed(spec.seed(), attempt) };
        let s = if attempt == 0 && spec.n() >= needed {
            spec.clone()
        } else {
            fresh_specialization(needed.max(spec.n()), seed, spec.field())
        };
        if region_matrix_rank(region, level, &s) == rows {
            return true;
        }
    }
    false
}

/// Membership in the shift of `K u L` where `K` and `L` meet in a simplex `sigma`, from the
/// shifts of the three pieces.
#[derive(Clone, Debug)]
pub struct UnionOverSimplex {
    n: usize,
    parts: [HashSet<Face>; 3],
}

/// Builds the membership predicate from the three shifted families on `[n]`.
pub fn shift_union_over_simplex(
    shift_k: &[Vec<Face>],
    shift_l: &[Vec<Face>],
    shift_sigma: &[Vec<Face>],
    n: usize,
) -> UnionOverSimplex {
    let set = |fs: &[Vec<Face>]| fs.iter().flatten().cloned().collect::<HashSet<Face>>();
    UnionOverSimplex { n, parts: [set(shift_k), set(shift_l), set(shift_sigma)] }
}

impl UnionOverSimplex {
    /// `T` is a face iff its last gap is at most `D_K + D_L - D_sigma` of its base.
    pub fn contains(&self, t: &[u32]) -> bool {
        let Some((&last, base)) = t.split_last() else {
            return false;
        };
        let floor = base.last().copied().unwrap_or(0);
        let count = |part: &HashSet<Face>| {
            let mut probe = base.to_vec();
            probe.push(0);
            (floor + 1..=self.n as u32)
                .filter(|&s| {
                    *probe.last_mut().expect("nonempty") = s;
                    part.contains(&probe)
                })
                .count() as i64
        };
        let room = count(&self.parts[0]) + count(&self.parts[1]) - count(&self.parts[2]);
        (last - floor) as i64 <= room
    }

    /// All faces of the union's shift of the given size.
    pub fn faces(&self, size: usize) -> Vec<Face> {
        lex::subsets(self.n, size).filter(|t| self.contains(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn spec_for(k: &SimplicialComplex, seed: u64) -> GenericSpecialization {
        fresh_specialization(k.n(), seed, PrimeField::default())
    }

    #[test]
    fn specialization_is_reproducible() {
        let f = PrimeField::default();
        assert_eq!(fresh_specialization(5, 9, f), fresh_specialization(5, 9, f));
        assert_eq!(fresh_specialization(1, 9, f).entries.len(), 1);
        let distinct = (0..100u64)
            .filter(|&s| fresh_specialization(4, s, f).entries != fresh_specialization(4, s + 1000, f).entries)
            .count();
        assert_eq!(distinct, 100);
    }

    #[test]
    fn tetrahedron_and_octahedron() {
        let tet = standard::tetrahedron();
        let faces = exterior_shift(tet.complex(), 2, &spec_for(tet.complex(), 1)).unwrap();
        assert_eq!(faces, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]);
        let oct = standard::octahedron();
        let faces = exterior_shift(oct.complex(), 2, &spec_for(oct.complex(), 2)).unwrap();
        let expected: Vec<Face> = vec![
            vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5], vec![1, 2, 6],
            vec![1, 3, 4], vec![1, 3, 5], vec![1, 3, 6], vec![2, 3, 4],
        ];
        assert_eq!(faces, expected);
        assert!(exterior_shift(oct.complex(), 3, &spec_for(oct.complex(), 2)).is_err());
    }

    #[test]
    fn octahedron_certifies() {
        let oct = standard::octahedron();
        let r = shift_complex(oct.complex(), &EngineConfig::with_seed(3)).unwrap();
        assert!(r.certified_by_dim.iter().all(|&c| c == Certification::Certified));
        assert_eq!(r.seeds.len(), 1);
    }

    #[test]
    fn gap_is_not_certified() {
        let k = standard::octahedron();
        let gapped: Vec<Face> = vec![vec![1, 2], vec![1, 4]];
        assert!(!certify_dim(&gapped, 1, k.complex()));
    }

    #[test]
    fn torus7_coranks() {
        let t = standard::torus7();
        let spec = spec_for(t.complex(), 5);
        assert_eq!(psi_corank(t.complex(), 4, 1, &spec).unwrap(), 3);
        assert_eq!(psi_corank(t.complex(), 7, 1, &spec).unwrap(), 0);
        assert!(matches!(psi_corank(t.complex(), 8, 1, &spec), Err(Error::ParameterOrder { .. })));
        assert!(matches!(psi_corank(t.complex(), 1, 2, &spec), Err(Error::ParameterOrder { .. })));
    }

    #[test]
    fn octahedron_corank_matches_tail() {
        let oct = standard::octahedron();
        for level in 2..=6 {
            check_corank_tail(oct.complex(), level, 2, &EngineConfig::with_seed(11)).unwrap();
        }
        for level in 1..=6 {
            check_corank_tail(oct.complex(), level, 1, &EngineConfig::with_seed(11)).unwrap();
        }
    }

    #[test]
    fn region_matrices() {
        let single = Region::new(vec![[1, 2, 3]]).unwrap();
        let spec = fresh_specialization(9, 1, PrimeField::default());
        assert!(region_rows_independent(&single, 4, &spec));
        let quad = Region::new(vec![[1, 2, 5], [2, 3, 5], [3, 4, 5], [1, 4, 5]]).unwrap();
        assert_eq!(region_matrix(&quad, 4, &spec).len(), 4);
        assert!(region_rows_independent(&quad, 4, &spec));
        let strip = standard::glued_hexagon_moebius();
        assert!(region_rows_independent(&strip, 4, &spec));
    }

    #[test]
    fn union_with_own_simplex_is_identity() {
        let oct = standard::octahedron();
        let r = shift_complex(oct.complex(), &EngineConfig::with_seed(4)).unwrap();
        let tri = crate::build_complex(&[[1i64, 2, 3]]).unwrap();
        let rt = shift_complex(&tri, &EngineConfig::with_seed(4)).unwrap();
        let u = shift_union_over_simplex(&r.faces_by_dim, &rt.faces_by_dim, &rt.faces_by_dim, 6);
        for d in 0..3 {
            assert_eq!(u.faces(d + 1), r.faces_by_dim[d]);
        }
    }

    #[test]
    fn betti_of_standard_shifts() {
        let cfg = EngineConfig::with_seed(8);
        let torus = shift_complex(standard::torus7().complex(), &cfg).unwrap();
        assert_eq!(torus.betti(), vec![1, 2, 1]);
        let rp2 = shift_complex(standard::rp2_6().complex(), &cfg).unwrap();
        assert_eq!(rp2.betti(), vec![1, 0, 0]);
        let sphere = shift_complex(standard::octahedron().complex(), &cfg).unwrap();
        assert_eq!(sphere.betti(), vec![1, 0, 1]);
    }
}
