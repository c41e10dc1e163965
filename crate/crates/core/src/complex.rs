//! Finite abstract simplicial complexes on the vertex set `1..=n`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A face: strictly increasing vertex labels.
pub type Face = Vec<u32>;

/// A downward-closed family of faces on the labels `1..=n`, every label used.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    n: usize,
    /// `faces[d]` holds the `d`-faces in lex order.
    faces: Vec<Vec<Face>>,
}

/// Downward closure of `maximal_faces`, with labels compacted to `1..=n` preserving order.
pub fn build_complex<F: AsRef<[i64]>>(maximal_faces: &[F]) -> Result<SimplicialComplex> {
    let mut faces: Vec<Vec<u32>> = Vec::with_capacity(maximal_faces.len());
    for raw in maximal_faces {
        let raw = raw.as_ref();
        if raw.is_empty() {
            return Err(Error::EmptyFace);
        }
        let mut f = Vec::with_capacity(raw.len());
        for &v in raw {
            if v <= 0 || v > u32::MAX as i64 {
                return Err(Error::NonPositiveLabel(v));
            }
            f.push(v as u32);
        }
        f.sort_unstable();
        if let Some(w) = f.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex { vertex: w[0], face: raw.iter().map(|&v| v as u32).collect() });
        }
        faces.push(f);
    }
    SimplicialComplex::from_faces(faces)
}

impl SimplicialComplex {
    /// Downward closure of arbitrary strictly increasing faces, labels compacted.
    pub fn from_faces<I>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Face>,
    {
        let faces: Vec<Face> = faces.into_iter().collect();
        if faces.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let labels: BTreeSet<u32> = faces.iter().flatten().copied().collect();
        let max = *labels.iter().next_back().expect("nonempty");
        let mut rank = vec![0u32; max as usize + 1];
        for (i, &l) in labels.iter().enumerate() {
            rank[l as usize] = i as u32 + 1;
        }
        let top = faces.iter().map(Vec::len).max().unwrap_or(0);
        let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); top];
        for f in &faces {
            if f.is_empty() {
                return Err(Error::EmptyFace);
            }
            let g: Face = f.iter().map(|&v| rank[v as usize]).collect();
            insert_closure(&mut sets, g);
        }
        Ok(Self::from_sets(labels.len(), sets))
    }

    fn from_sets(n: usize, sets: Vec<BTreeSet<Face>>) -> Self {
        let mut faces: Vec<Vec<Face>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        Self { n, faces }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Top dimension.
    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }

    /// The `d`-faces in lex order; empty beyond the top dimension.
    pub fn faces(&self, d: usize) -> &[Face] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn faces_by_dim(&self) -> &[Vec<Face>] {
        &self.faces
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, fs)| if d % 2 == 0 { fs.len() as i64 } else { -(fs.len() as i64) })
            .sum()
    }

    /// Membership of a strictly increasing tuple.
    pub fn contains(&self, face: &[u32]) -> bool {
        !face.is_empty()
            && self
                .faces
                .get(face.len() - 1)
                .is_some_and(|fs| fs.binary_search_by(|f| f.as_slice().cmp(face)).is_ok())
    }

    /// Faces not contained in any larger face.
    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for d in 0..self.faces.len() {
            let covered: BTreeSet<Face> = self
                .faces(d + 1)
                .iter()
                .flat_map(|g| (0..g.len()).map(move |skip| without(g, skip)))
                .collect();
            out.extend(self.faces[d].iter().filter(|f| !covered.contains(*f)).cloned());
        }
        out.sort();
        out
    }

    /// Whether every facet has the top dimension.
    pub fn is_pure(&self) -> bool {
        let top = self.dim();
        self.facets().iter().all(|f| f.len() == top + 1)
    }

    /// Identifies the endpoints of `{a, b}` onto the smaller label and recompacts labels.
    pub fn contract_edge(&self, a: u32, b: u32) -> Result<Self> {
        let (keep, gone) = (a.min(b), a.max(b));
        if a == b || !self.contains(&[keep, gone]) {
            return Err(Error::EdgeAbsent(a, b));
        }
        let map = |v: u32| -> u32 {
            if v == gone {
                keep
            } else if v > gone {
                v - 1
            } else {
                v
            }
        };
        let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); self.faces.len()];
        for fs in &self.faces {
            for f in fs {
                let mut g: Face = f.iter().map(|&v| map(v)).collect();
                g.sort_unstable();
                g.dedup();
                sets[g.len() - 1].insert(g);
            }
        }
        Ok(Self::from_sets(self.n - 1, sets))
    }

    /// Applies the bijection `v -> perm[v - 1]` of `1..=n`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        let mut seen = vec![false; self.n + 1];
        if perm.len() != self.n
            || perm.iter().any(|&p| p == 0 || p as usize > self.n || std::mem::replace(&mut seen[p as usize], true))
        {
            return Err(Error::InvalidPermutation(self.n));
        }
        let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); self.faces.len()];
        for fs in &self.faces {
            for f in fs {
                let mut g: Face = f.iter().map(|&v| perm[v as usize - 1]).collect();
                g.sort_unstable();
                sets[g.len() - 1].insert(g);
            }
        }
        Ok(Self::from_sets(self.n, sets))
    }
}

/// `face` with the entry at `skip` removed.
pub(crate) fn without(face: &[u32], skip: usize) -> Face {
    let mut sub = face.to_vec();
    sub.remove(skip);
    sub
}

fn insert_closure(sets: &mut [BTreeSet<Face>], face: Face) {
    if sets[face.len() - 1].contains(&face) {
        return;
    }
    if face.len() > 1 {
        for skip in 0..face.len() {
            insert_closure(sets, without(&face, skip));
        }
    }
    sets[face.len() - 1].insert(face);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures() {
        assert_eq!(build_complex(&[[1i64, 2, 3]]).unwrap().f_vector(), vec![3, 3, 1]);
        assert_eq!(build_complex(&[[1i64, 2], [2, 3]]).unwrap().f_vector(), vec![3, 2]);
    }

    #[test]
    fn labels_compact() {
        let k = build_complex(&[[4i64, 9, 20]]).unwrap();
        assert_eq!(k.n(), 3);
        assert_eq!(k.faces(2), &[vec![1, 2, 3]]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(build_complex(&[[1i64, 1, 2]]), Err(Error::DuplicateVertex { .. })));
        assert!(matches!(build_complex::<[i64; 0]>(&[[]]), Err(Error::EmptyFace)));
        assert!(matches!(build_complex(&[[0i64, 1]]), Err(Error::NonPositiveLabel(0))));
    }

    #[test]
    fn contract_triangle_edge() {
        let k = build_complex(&[[1i64, 2, 3]]).unwrap();
        let c = k.contract_edge(1, 2).unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.f_vector(), vec![2, 1]);
        assert!(matches!(c.contract_edge(1, 3), Err(Error::EdgeAbsent(1, 3))));
    }

    #[test]
    fn facets_of_mixed_complex() {
        let k = build_complex(&[vec![1i64, 2, 3], vec![3, 4], vec![5]]).unwrap();
        assert_eq!(k.facets(), vec![vec![1, 2, 3], vec![3, 4], vec![5]]);
        assert!(!k.is_pure());
    }
}
