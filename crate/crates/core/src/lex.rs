//! Lexicographic and dominance orders on faces, and shifted families.
//!
//! Faces are strictly increasing vectors of labels, so the derived `Ord` on
//! `Vec<u32>` is the lexicographic order whenever the lengths agree.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::complex::Face;

/// All `size`-subsets of `1..=n` in lex order.
pub fn subsets(n: usize, size: usize) -> impl Iterator<Item = Face> {
    (1..=n as u32).combinations(size)
}

/// All `last.len()`-subsets of `1..=n` that are lex-smaller or equal to `last`.
pub fn lex_prefix(n: usize, last: &[u32]) -> Vec<Face> {
    subsets(n, last.len()).take_while(|f| f.as_slice() <= last).collect()
}

/// Members of `faces` of size `|sigma|` that are lex-greater or equal to `sigma`.
///
/// `sigma` may use labels beyond the ground set; comparison is on integer sequences.
pub fn tail_lex(faces: &[Face], sigma: &[u32]) -> Vec<Face> {
    faces
        .iter()
        .filter(|f| f.len() == sigma.len() && f.as_slice() >= sigma)
        .cloned()
        .collect()
}

/// `a <=_p b`: same size and `a_i <= b_i` for every position.
pub fn dominated(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Whether `faces` (all of one size) is an initial segment of the lex order on subsets of `[n]`.
pub fn is_lex_prefix(faces: &[Face], n: usize) -> bool {
    let Some(first) = faces.first() else {
        return true;
    };
    subsets(n, first.len()).zip(faces).all(|(s, f)| &s == f)
}

/// Faces obtained from `sigma` by lowering one entry by one without collision.
fn elementary_lowerings(sigma: &[u32]) -> impl Iterator<Item = Face> + '_ {
    (0..sigma.len()).filter_map(move |i| {
        let lowered = sigma[i] - 1;
        let blocked = lowered == 0 || (i > 0 && sigma[i - 1] == lowered);
        (!blocked).then(|| {
            let mut t = sigma.to_vec();
            t[i] = lowered;
            t
        })
    })
}

/// Whether the family (faces grouped by dimension) is closed under `<=_p` and under taking subsets.
pub fn is_shifted(faces_by_dim: &[Vec<Face>]) -> bool {
    let sets: Vec<BTreeSet<&Face>> = faces_by_dim.iter().map(|fs| fs.iter().collect()).collect();
    for (d, fs) in faces_by_dim.iter().enumerate() {
        for sigma in fs {
            if elementary_lowerings(sigma).any(|t| !sets[d].contains(&t)) {
                return false;
            }
            if d > 0 {
                for skip in 0..sigma.len() {
                    let mut sub = sigma.clone();
                    sub.remove(skip);
                    if !sets[d - 1].contains(&sub) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The smallest shifted complex containing `generators`, grouped by dimension.
pub fn shifted_closure(generators: &[Face]) -> Vec<Vec<Face>> {
    let top = generators.iter().map(Vec::len).max().unwrap_or(0);
    let mut sets: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); top];
    let mut stack: Vec<Face> = generators.iter().filter(|g| !g.is_empty()).cloned().collect();
    while let Some(f) = stack.pop() {
        if !sets[f.len() - 1].insert(f.clone()) {
            continue;
        }
        stack.extend(elementary_lowerings(&f));
        if f.len() > 1 {
            for skip in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(skip);
                stack.push(sub);
            }
        }
    }
    sets.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// Faces of each dimension `>= 1` that are maximal under `<=_p` within their dimension.
pub fn maximal_faces(faces_by_dim: &[Vec<Face>]) -> Vec<Face> {
    let mut out = Vec::new();
    for fs in faces_by_dim.iter().skip(1) {
        for f in fs {
            if !fs.iter().any(|g| g != f && dominated(f, g)) {
                out.push(f.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefix_and_tail() {
        let p = lex_prefix(6, &[1, 3, 6]);
        assert_eq!(p.len(), 4 + 3);
        assert!(is_lex_prefix(&p, 6));
        let t = tail_lex(&[vec![1, 3, 6], vec![2, 3, 4]], &[1, 3, 6]);
        assert_eq!(t.len(), 2);
        assert!(tail_lex(&p, &[5, 6, 7]).is_empty());
    }

    #[test]
    fn prefix_with_gap_is_not_prefix() {
        let faces = vec![vec![1, 2], vec![1, 4]];
        assert!(!is_lex_prefix(&faces, 4));
    }

    #[test]
    fn closure_of_single_edge() {
        let c = shifted_closure(&[vec![2, 4]]);
        assert_eq!(c[0], vec![vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(c[1], vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]);
        assert!(is_shifted(&c));
        assert_eq!(maximal_faces(&c), vec![vec![2, 4]]);
    }
}
