//! Simplicial homology ranks from boundary matrices.

use crate::complex::{without, Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::{rational_rank, Echelon, PrimeField};
use crate::surface::SurfaceTriangulation;

fn face_index(faces: &[Face], f: &[u32]) -> usize {
    faces.binary_search_by(|g| g.as_slice().cmp(f)).expect("boundary face present")
}

/// Rank of the boundary map from `d`-faces to `(d-1)`-faces over `F_p`.
fn boundary_rank(k: &SimplicialComplex, d: usize, field: PrimeField) -> usize {
    let lower = k.faces(d - 1);
    let mut basis = Echelon::new(field);
    for f in k.faces(d) {
        let mut row = vec![0u64; lower.len()];
        for skip in 0..f.len() {
            let idx = face_index(lower, &without(f, skip));
            row[idx] = if skip % 2 == 0 { 1 } else { field.neg(1) };
        }
        basis.insert(row);
    }
    basis.rank()
}

/// Betti numbers `b_0..=b_dim` over `F_p` for an odd prime `p`.
pub fn betti_numbers(k: &SimplicialComplex, p: u64) -> Result<Vec<usize>> {
    if p % 2 == 0 {
        return Err(Error::BadModulus(p));
    }
    let field = PrimeField::new(p)?;
    let f = k.f_vector();
    let ranks: Vec<usize> = (0..=k.dim() + 1)
        .map(|d| if d == 0 || d > k.dim() { 0 } else { boundary_rank(k, d, field) })
        .collect();
    Ok((0..=k.dim()).map(|d| f[d] - ranks[d] - ranks[d + 1]).collect())
}

/// Rational Betti number of the top dimension, or `None` if it could not be decided exactly.
///
/// Closed surfaces use their classification; other complexes use exact integer elimination.
pub fn rational_top_betti(k: &SimplicialComplex) -> Option<usize> {
    let d = k.dim();
    if d == 2 {
        if let Ok(s) = SurfaceTriangulation::new(k.clone()) {
            return Some(s.topology().betti()[2]);
        }
    }
    if d == 0 {
        return Some(k.n());
    }
    let lower = k.faces(d - 1);
    let rows: Vec<Vec<i64>> = k
        .faces(d)
        .iter()
        .map(|f| {
            let mut row = vec![0i64; lower.len()];
            for skip in 0..f.len() {
                row[face_index(lower, &without(f, skip))] = if skip % 2 == 0 { 1 } else { -1 };
            }
            row
        })
        .collect();
    rational_rank(&rows).map(|r| k.faces(d).len() - r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::MERSENNE_61;
    use crate::standard;

    #[test]
    fn surface_betti() {
        assert_eq!(betti_numbers(standard::torus7().complex(), MERSENNE_61).unwrap(), vec![1, 2, 1]);
        assert_eq!(betti_numbers(standard::rp2_6().complex(), 3).unwrap(), vec![1, 0, 0]);
        assert_eq!(betti_numbers(standard::octahedron().complex(), 5).unwrap(), vec![1, 0, 1]);
        assert_eq!(betti_numbers(standard::klein9().complex(), 7).unwrap(), vec![1, 1, 0]);
        assert!(betti_numbers(standard::torus7().complex(), 4).is_err());
    }

    #[test]
    fn rational_top_betti_of_non_surfaces() {
        let two = crate::build_complex(&[[1i64, 2, 3], [2, 3, 4]]).unwrap();
        assert_eq!(rational_top_betti(&two), Some(0));
        let circle = crate::build_complex(&[[1i64, 2], [2, 3], [1, 3]]).unwrap();
        assert_eq!(rational_top_betti(&circle), Some(1));
    }
}
