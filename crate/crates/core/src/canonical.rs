//! Relabeling-invariant encodings of surface triangulations.
//!
//! A flag `(u, v, w)` picks a vertex `u`, a neighbor `v` and a direction around `u`
//! (towards `w`). From a flag, a breadth-first traversal labels vertices in discovery
//! order and records every vertex's rotation. The canonical form is the least record
//! over all flags; two triangulations share it iff they are isomorphic.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::surface::SurfaceTriangulation;

/// The least traversal record `[n, deg(1), nbrs(1).., deg(2), ..]` over all start flags.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(Vec<u32>);

impl CanonicalForm {
    pub fn code(&self) -> &[u32] {
        &self.0
    }

    /// Vertex count encoded in the form.
    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    /// Byte encoding: one byte per entry when all entries fit, otherwise a 0xff tag
    /// followed by big-endian 32-bit entries.
    pub fn to_bytes(&self) -> Vec<u8> {
        if self.0.iter().all(|&x| x < 0xff) {
            self.0.iter().map(|&x| x as u8).collect()
        } else {
            let mut out = vec![0xff];
            for &x in &self.0 {
                out.extend_from_slice(&x.to_be_bytes());
            }
            out
        }
    }

    pub fn from_bytes(bytes: &[u8]) -> Option<Self> {
        match bytes.first()? {
            0xff => {
                let body = &bytes[1..];
                if body.len() % 4 != 0 {
                    return None;
                }
                Some(Self(body.chunks(4).map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]])).collect()))
            }
            _ => Some(Self(bytes.iter().map(|&b| b as u32).collect())),
        }
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(hex: &str) -> Option<Self> {
        if hex.len() % 2 != 0 {
            return None;
        }
        let bytes: Option<Vec<u8>> =
            (0..hex.len()).step_by(2).map(|i| u8::from_str_radix(hex.get(i..i + 2)?, 16).ok()).collect();
        Self::from_bytes(&bytes?)
    }

    /// Rebuilds the triangulation in the canonical labeling.
    pub fn triangles(&self) -> Vec<[u32; 3]> {
        let code = &self.0;
        let n = code[0] as usize;
        let mut out = Vec::new();
        let mut pos = 1;
        for v in 1..=n as u32 {
            let k = code[pos] as usize;
            let nbrs = &code[pos + 1..pos + 1 + k];
            for i in 0..k {
                let (a, b) = (nbrs[i], nbrs[(i + 1) % k]);
                if v < a && v < b {
                    let mut t = [v, a, b];
                    t.sort_unstable();
                    out.push(t);
                }
            }
            pos += 1 + k;
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Canonical form over all start flags at vertices of minimum degree.
pub fn canonical_form(k: &SurfaceTriangulation) -> CanonicalForm {
    let min_deg = (1..=k.n() as u32).map(|v| k.degree(v)).min().unwrap_or(0);
    let roots: Vec<u32> = (1..=k.n() as u32).filter(|&v| k.degree(v) == min_deg).collect();
    canonical_from_roots(k, &roots)
}

/// Canonical form of the triangulation with `apex` marked: only flags at `apex` are used.
pub fn canonical_form_marked(k: &SurfaceTriangulation, apex: u32) -> CanonicalForm {
    canonical_from_roots(k, &[apex])
}

fn canonical_from_roots(k: &SurfaceTriangulation, roots: &[u32]) -> CanonicalForm {
    let mut enc = Encoder::new(k);
    let mut best: Option<Vec<u32>> = None;
    for &u in roots {
        let link = k.link(u);
        let deg = link.len();
        for p in 0..deg {
            for dir in [1isize, -1] {
                let w = link[(p as isize + dir).rem_euclid(deg as isize) as usize];
                if let Some(code) = enc.run(u, link[p], w, best.as_deref()) {
                    best = Some(code);
                }
            }
        }
    }
    CanonicalForm(best.expect("a surface has at least one flag"))
}

struct Encoder<'a> {
    k: &'a SurfaceTriangulation,
    label: Vec<u32>,
    queue: Vec<(u32, u32, u32)>,
}

impl<'a> Encoder<'a> {
    fn new(k: &'a SurfaceTriangulation) -> Self {
        Self { k, label: vec![0; k.n() + 1], queue: Vec::with_capacity(k.n()) }
    }

    /// Traversal record from flag `(u, v, w)`, or `None` once it exceeds `bound`.
    fn run(&mut self, u: u32, v: u32, w: u32, bound: Option<&[u32]>) -> Option<Vec<u32>> {
        self.label.iter_mut().for_each(|l| *l = 0);
        self.queue.clear();
        let mut code = Vec::with_capacity(1 + self.k.n() + 2 * self.k.num_edges());
        // Once the record is strictly below the bound, no further comparison is needed.
        let mut state = if bound.is_some() { Ordering::Equal } else { Ordering::Less };
        let mut emit = |code: &mut Vec<u32>, x: u32| -> bool {
            if state == Ordering::Equal {
                let b = bound.expect("bound present while equal")[code.len()];
                state = x.cmp(&b);
                if state == Ordering::Greater {
                    return false;
                }
            }
            code.push(x);
            true
        };
        if !emit(&mut code, self.k.n() as u32) {
            return None;
        }
        let mut next = 1;
        self.label[u as usize] = next;
        self.queue.push((u, v, w));
        let mut head = 0;
        while head < self.queue.len() {
            let (x, s, t) = self.queue[head];
            head += 1;
            let link = self.k.link(x);
            let deg = link.len() as isize;
            let p = link.iter().position(|&y| y == s).expect("flag neighbor in link") as isize;
            let dir = if link[((p + 1) % deg) as usize] == t { 1 } else { -1 };
            if !emit(&mut code, deg as u32) {
                return None;
            }
            for idx in 0..deg {
                let c = link[(p + dir * idx).rem_euclid(deg) as usize];
                if self.label[c as usize] == 0 {
                    next += 1;
                    self.label[c as usize] = next;
                    let prev = link[(p + dir * (idx - 1)).rem_euclid(deg) as usize];
                    self.queue.push((c, x, prev));
                }
                if !emit(&mut code, self.label[c as usize]) {
                    return None;
                }
            }
        }
        (state == Ordering::Less).then_some(code)
    }
}
