//! Closed surface triangulations: classification, contraction, splitting and separation.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};
use crate::region::{Region, RegionShape};

/// Topological type of a closed connected surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    Sphere,
    Torus,
    ProjectivePlane,
    KleinBottle,
    Other { euler: i64, orientable: bool },
}

impl Topology {
    pub fn from_invariants(euler: i64, orientable: bool) -> Self {
        match (euler, orientable) {
            (2, true) => Topology::Sphere,
            (0, true) => Topology::Torus,
            (1, false) => Topology::ProjectivePlane,
            (0, false) => Topology::KleinBottle,
            _ => Topology::Other { euler, orientable },
        }
    }

    /// Rational Betti numbers `(b0, b1, b2)` of the closed surface.
    pub fn betti(self) -> [usize; 3] {
        match self {
            Topology::Sphere => [1, 0, 1],
            Topology::Torus => [1, 2, 1],
            Topology::ProjectivePlane => [1, 0, 0],
            Topology::KleinBottle => [1, 1, 0],
            Topology::Other { euler, orientable: true } => [1, (2 - euler) as usize, 1],
            Topology::Other { euler, orientable: false } => [1, (1 - euler) as usize, 0],
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Sphere => f.write_str("sphere"),
            Topology::Torus => f.write_str("torus"),
            Topology::ProjectivePlane => f.write_str("projective-plane"),
            Topology::KleinBottle => f.write_str("klein-bottle"),
            Topology::Other { euler, orientable } => {
                write!(f, "other(chi={euler}, {})", if *orientable { "orientable" } else { "non-orientable" })
            }
        }
    }
}

impl std::str::FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "sphere" => Ok(Topology::Sphere),
            "torus" => Ok(Topology::Torus),
            "rp2" | "projective-plane" => Ok(Topology::ProjectivePlane),
            "klein" | "klein-bottle" => Ok(Topology::KleinBottle),
            other => Err(format!("unknown surface '{other}'")),
        }
    }
}

/// A validated closed connected surface triangulation.
#[derive(Clone, Debug)]
pub struct SurfaceTriangulation {
    complex: SimplicialComplex,
    topology: Topology,
    triangles: Vec<[u32; 3]>,
    /// Sorted neighbors; index 0 unused.
    neighbors: Vec<Vec<u32>>,
    /// Link cycle of each vertex, starting at its least neighbor; index 0 unused.
    links: Vec<Vec<u32>>,
    /// `tri_adj[t][i]` is the triangle across the edge of `t` opposite position `i`.
    tri_adj: Vec<[u32; 3]>,
}

impl PartialEq for SurfaceTriangulation {
    fn eq(&self, other: &Self) -> bool {
        self.complex == other.complex
    }
}

impl Eq for SurfaceTriangulation {}

/// One component of the complement of an edge set, with its closure.
#[derive(Clone, Debug)]
pub struct Separation {
    pub region: Region,
    pub euler: i64,
    pub orientable: bool,
}

/// Validates the closed-surface conditions and names the surface.
pub fn classify_surface(k: &SimplicialComplex) -> Result<SurfaceTriangulation> {
    SurfaceTriangulation::new(k.clone())
}

impl SurfaceTriangulation {
    pub fn new(complex: SimplicialComplex) -> Result<Self> {
        if complex.dim() != 2 {
            return Err(Error::NotClosedSurface(format!("dimension {} instead of 2", complex.dim())));
        }
        let n = complex.n();
        let triangles: Vec<[u32; 3]> = complex.faces(2).iter().map(|f| [f[0], f[1], f[2]]).collect();

        let mut edge_tris: HashMap<(u32, u32), Vec<u32>> = HashMap::with_capacity(triangles.len() * 3 / 2);
        for (t, tri) in triangles.iter().enumerate() {
            for (a, b) in tri_edges(tri) {
                edge_tris.entry((a, b)).or_default().push(t as u32);
            }
        }
        for e in complex.faces(1) {
            let count = edge_tris.get(&(e[0], e[1])).map_or(0, Vec::len);
            if count != 2 {
                return Err(Error::NotClosedSurface(format!("edge ({}, {}) lies in {count} triangles", e[0], e[1])));
            }
        }

        let mut tri_adj = vec![[0u32; 3]; triangles.len()];
        for (t, tri) in triangles.iter().enumerate() {
            for i in 0..3 {
                let (a, b) = opposite_edge(tri, i);
                let pair = &edge_tris[&(a, b)];
                tri_adj[t][i] = if pair[0] == t as u32 { pair[1] } else { pair[0] };
            }
        }

        let mut link_edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n + 1];
        for tri in &triangles {
            for i in 0..3 {
                link_edges[tri[i] as usize].push(opposite_edge(tri, i));
            }
        }
        let mut neighbors = vec![Vec::new(); n + 1];
        let mut links = vec![Vec::new(); n + 1];
        for v in 1..=n {
            let cycle = link_cycle(&link_edges[v])
                .ok_or_else(|| Error::NotClosedSurface(format!("link of vertex {v} is not a single cycle")))?;
            let mut nb = cycle.clone();
            nb.sort_unstable();
            neighbors[v] = nb;
            links[v] = cycle;
        }

        let (orientable, connected) = orient(&triangles, &tri_adj);
        if !connected {
            return Err(Error::NotClosedSurface("not connected".into()));
        }
        let topology = Topology::from_invariants(complex.euler_characteristic(), orientable);
        Ok(Self { complex, topology, triangles, neighbors, links, tri_adj })
    }

    /// Builds and classifies the complex generated by `triangles`.
    pub fn from_triangles(triangles: &[[u32; 3]]) -> Result<Self> {
        let faces: Vec<Face> = triangles
            .iter()
            .map(|t| {
                let mut f = t.to_vec();
                f.sort_unstable();
                f
            })
            .collect();
        for f in &faces {
            if f[0] == 0 {
                return Err(Error::NonPositiveLabel(0));
            }
            if f[0] == f[1] || f[1] == f[2] {
                return Err(Error::DuplicateVertex { vertex: f[1], face: f.clone() });
            }
        }
        Self::new(SimplicialComplex::from_faces(faces)?)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn n(&self) -> usize {
        self.complex.n()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    pub fn is_orientable(&self) -> bool {
        match self.topology {
            Topology::Sphere | Topology::Torus => true,
            Topology::ProjectivePlane | Topology::KleinBottle => false,
            Topology::Other { orientable, .. } => orientable,
        }
    }

    /// Triangles in lex order.
    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> impl Iterator<Item = [u32; 2]> + '_ {
        self.complex.faces(1).iter().map(|e| [e[0], e[1]])
    }

    pub fn num_edges(&self) -> usize {
        self.complex.faces(1).len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.neighbors[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors[v as usize].len()
    }

    /// Cyclic order of the neighbors of `v`.
    pub fn link(&self, v: u32) -> &[u32] {
        &self.links[v as usize]
    }

    pub fn is_edge(&self, a: u32, b: u32) -> bool {
        a != b && self.neighbors.get(a as usize).is_some_and(|nb| nb.binary_search(&b).is_ok())
    }

    pub fn triangle_index(&self, a: u32, b: u32, c: u32) -> Option<usize> {
        let mut t = [a, b, c];
        t.sort_unstable();
        self.triangles.binary_search(&t).ok()
    }

    pub fn is_triangle(&self, a: u32, b: u32, c: u32) -> bool {
        self.triangle_index(a, b, c).is_some()
    }

    pub(crate) fn triangle_neighbors(&self, t: usize) -> [u32; 3] {
        self.tri_adj[t]
    }

    /// The two triangles on the edge `{a, b}`.
    pub(crate) fn edge_triangles(&self, a: u32, b: u32) -> Option<[usize; 2]> {
        let link = self.link(a);
        let k = link.len();
        let pos = link.iter().position(|&x| x == b)?;
        let before = link[(pos + k - 1) % k];
        let after = link[(pos + 1) % k];
        Some([self.triangle_index(a, b, before)?, self.triangle_index(a, b, after)?])
    }

    pub fn common_neighbors(&self, a: u32, b: u32) -> Vec<u32> {
        let (x, y) = (self.neighbors(a), self.neighbors(b));
        let (mut i, mut j, mut out) = (0, 0, Vec::new());
        while i < x.len() && j < y.len() {
            match x[i].cmp(&y[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(x[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Triples of pairwise adjacent vertices that do not span a triangle.
    pub fn missing_triangles(&self) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for [a, b] in self.edges() {
            for c in self.common_neighbors(a, b) {
                if c > b && !self.is_triangle(a, b, c) {
                    out.push([a, b, c]);
                }
            }
        }
        out
    }

    fn is_tetrahedron(&self) -> bool {
        self.n() == 4 && self.triangles.len() == 4
    }

    /// Whether `{a, b}` is an edge lying in no missing triangle.
    pub fn is_contractible(&self, a: u32, b: u32) -> bool {
        self.is_edge(a, b) && !self.is_tetrahedron() && self.common_neighbors(a, b).len() == 2
    }

    /// Every edge in no missing triangle; empty for the tetrahedron boundary.
    pub fn contractible_edges(&self) -> Vec<[u32; 2]> {
        self.edges().filter(|&[a, b]| self.is_contractible(a, b)).collect()
    }

    /// No contractible edge.
    pub fn is_irreducible(&self) -> bool {
        self.contractible_edges().is_empty()
    }

    /// Contracts a contractible edge onto its smaller endpoint.
    pub fn contract(&self, a: u32, b: u32) -> Result<Self> {
        if !self.is_edge(a, b) {
            return Err(Error::EdgeAbsent(a, b));
        }
        if !self.is_contractible(a, b) {
            return Err(Error::NotContractible(a, b));
        }
        Self::new(self.complex.contract_edge(a, b)?)
    }

    /// Splits `v` between its link neighbors `u` and `w`.
    ///
    /// `new_arc` lists the link vertices strictly between `u` and `w` on the side
    /// that moves to the new vertex `n + 1`; it must be one of the two open arcs.
    pub fn split_vertex(&self, v: u32, u: u32, w: u32, new_arc: &[u32]) -> Result<Self> {
        if v == 0 || v as usize > self.n() {
            return Err(Error::InvalidSplit(format!("vertex {v} not in the triangulation")));
        }
        let link = self.link(v);
        let k = link.len();
        let pos = |x: u32| {
            link.iter()
                .position(|&y| y == x)
                .ok_or_else(|| Error::InvalidSplit(format!("{x} is not in the link of {v}")))
        };
        let (i, j) = (pos(u)?, pos(w)?);
        if i == j {
            return Err(Error::InvalidSplit("degenerate arc: u equals w".into()));
        }
        let open_arc = |from: usize, to: usize| -> Vec<u32> {
            let mut out = Vec::new();
            let mut p = (from + 1) % k;
            while p != to {
                out.push(link[p]);
                p = (p + 1) % k;
            }
            out.sort_unstable();
            out
        };
        let mut wanted = new_arc.to_vec();
        wanted.sort_unstable();
        if wanted == open_arc(i, j) {
            Ok(self.split_at(v, i, j))
        } else if wanted == open_arc(j, i) {
            Ok(self.split_at(v, j, i))
        } else {
            Err(Error::InvalidSplit(format!("{new_arc:?} is not an arc of the link of {v} between {u} and {w}")))
        }
    }

    /// Splits `v` so the new vertex takes the link arc running forward from position `i` to `j`.
    pub(crate) fn split_at(&self, v: u32, i: usize, j: usize) -> Self {
        let link = self.link(v);
        let k = link.len();
        let new = self.n() as u32 + 1;
        let mut moved = vec![false; k];
        let mut p = i;
        while p != j {
            moved[p] = true;
            p = (p + 1) % k;
        }
        let mut tris: Vec<Face> = Vec::with_capacity(self.triangles.len() + 2);
        for t in &self.triangles {
            if t.contains(&v) {
                continue;
            }
            tris.push(t.to_vec());
        }
        for p in 0..k {
            let (a, b) = (link[p], link[(p + 1) % k]);
            let apex = if moved[p] { new } else { v };
            tris.push(sorted3(apex, a, b).to_vec());
        }
        tris.push(sorted3(v, new, link[i]).to_vec());
        tris.push(sorted3(v, new, link[j]).to_vec());
        let complex = SimplicialComplex::from_faces(tris).expect("split of a valid triangulation");
        Self::new(complex).expect("split of a valid triangulation")
    }

    /// One representative of every vertex split up to swapping the two new endpoints:
    /// `(v, i, j)` with `i < j` positions in the link of `v`.
    pub fn split_parameters(&self) -> Vec<(u32, usize, usize)> {
        let mut out = Vec::new();
        for v in 1..=self.n() as u32 {
            let k = self.degree(v);
            for i in 0..k {
                for j in i + 1..k {
                    out.push((v, i, j));
                }
            }
        }
        out
    }

    /// Applies a parameter from [`split_parameters`](Self::split_parameters).
    pub fn split_by_parameter(&self, (v, i, j): (u32, usize, usize)) -> Self {
        self.split_at(v, i, j)
    }

    /// Components of the complement of the cycle `cycle`, with their closures.
    pub fn separate_by_cycle(&self, cycle: &[u32]) -> Result<Vec<Separation>> {
        let edges = self.cycle_edges(cycle)?;
        Ok(self.separate_by_edges(&edges))
    }

    pub(crate) fn cycle_edges(&self, cycle: &[u32]) -> Result<Vec<[u32; 2]>> {
        if cycle.len() < 3 {
            return Err(Error::NotACycle(format!("{cycle:?} has fewer than 3 vertices")));
        }
        let mut seen = cycle.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotACycle(format!("{cycle:?} repeats a vertex")));
        }
        let mut edges = Vec::with_capacity(cycle.len());
        for p in 0..cycle.len() {
            let (a, b) = (cycle[p], cycle[(p + 1) % cycle.len()]);
            if !self.is_edge(a, b) {
                return Err(Error::NotACycle(format!("({a}, {b}) is not an edge")));
            }
            edges.push([a.min(b), a.max(b)]);
        }
        Ok(edges)
    }

    /// Components of `|K|` minus the edges `cut`, as triangle sets, in order of least triangle.
    pub(crate) fn components_avoiding(&self, cut: &[[u32; 2]]) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.triangles.len()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.triangles.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let t = members[head];
                head += 1;
                for i in 0..3 {
                    let (a, b) = opposite_edge(&self.triangles[t], i);
                    if cut.contains(&[a, b]) {
                        continue;
                    }
                    let nb = self.tri_adj[t][i] as usize;
                    if comp[nb] == usize::MAX {
                        comp[nb] = id;
                        members.push(nb);
                    }
                }
            }
            out.push(members);
        }
        out
    }

    /// Separation by an arbitrary edge set; each closure is the component's own triangles.
    pub fn separate_by_edges(&self, cut: &[[u32; 2]]) -> Vec<Separation> {
        self.components_avoiding(cut)
            .into_iter()
            .map(|members| {
                let tris: Vec<[u32; 3]> = members.iter().map(|&t| self.triangles[t]).collect();
                let region = Region::from_surface(self, tris).expect("component triangles lie in the surface");
                Separation { euler: region.euler_characteristic(), orientable: region.is_orientable(), region }
            })
            .collect()
    }

    /// No missing triangle bounds a disk.
    pub fn is_prime(&self) -> bool {
        self.missing_triangles().into_iter().all(|[a, b, c]| {
            self.separate_by_edges(&[[a, b], [a, c], [b, c]])
                .iter()
                .all(|s| s.region.shape() != RegionShape::Disk)
        })
    }

    /// Relabels by `v -> perm[v - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        Self::new(self.complex.relabel(perm)?)
    }
}

pub(crate) fn sorted3(a: u32, b: u32, c: u32) -> [u32; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

/// Edge of a sorted triangle opposite position `i`, as a sorted pair.
pub(crate) fn opposite_edge(t: &[u32; 3], i: usize) -> (u32, u32) {
    match i {
        0 => (t[1], t[2]),
        1 => (t[0], t[2]),
        _ => (t[0], t[1]),
    }
}

fn tri_edges(t: &[u32; 3]) -> [(u32, u32); 3] {
    [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]
}

/// Orders link edges into a cycle starting at the least vertex, heading to its lesser neighbor.
fn link_cycle(edges: &[(u32, u32)]) -> Option<Vec<u32>> {
    if edges.len() < 3 {
        return None;
    }
    let mut adj: HashMap<u32, Vec<u32>> = HashMap::with_capacity(edges.len());
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|nb| nb.len() != 2) || adj.len() != edges.len() {
        return None;
    }
    let start = *adj.keys().min()?;
    let first = *adj[&start].iter().min()?;
    let mut cycle = vec![start, first];
    while cycle.len() < adj.len() {
        let (prev, cur) = (cycle[cycle.len() - 2], cycle[cycle.len() - 1]);
        let nb = &adj[&cur];
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        if next == start {
            return None;
        }
        cycle.push(next);
    }
    let last = cycle[cycle.len() - 1];
    adj[&last].contains(&start).then_some(cycle)
}

/// Orientation propagation over the dual graph; returns (orientable, connected).
fn orient(triangles: &[[u32; 3]], tri_adj: &[[u32; 3]]) -> (bool, bool) {
    if triangles.is_empty() {
        return (true, false);
    }
    // sign[t] = +1 keeps the sorted order (a, b, c) as the orientation.
    let mut sign = vec![0i8; triangles.len()];
    sign[0] = 1;
    let mut queue = vec![0usize];
    let mut orientable = true;
    let mut reached = 1;
    while let Some(t) = queue.pop() {
        for i in 0..3 {
            let (a, b) = opposite_edge(&triangles[t], i);
            let u = tri_adj[t][i] as usize;
            // Required sign of u so the shared edge is traversed oppositely.
            let want = -sign[t] * edge_direction(&triangles[t], a, b) * edge_direction(&triangles[u], a, b);
            if sign[u] == 0 {
                sign[u] = want;
                reached += 1;
                queue.push(u);
            } else if sign[u] != want {
                orientable = false;
            }
        }
    }
    (orientable, reached == triangles.len())
}

/// +1 if the sorted cyclic order of `t` traverses `a -> b`, otherwise -1.
fn edge_direction(t: &[u32; 3], a: u32, b: u32) -> i8 {
    let pa = t.iter().position(|&x| x == a).expect("edge in triangle");
    if t[(pa + 1) % 3] == b {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard as examples;

    #[test]
    fn classify_standard_surfaces() {
        let tet = examples::tetrahedron();
        assert_eq!(tet.topology(), Topology::Sphere);
        assert!(tet.contractible_edges().is_empty());
        let t7 = examples::torus7();
        assert_eq!(t7.topology(), Topology::Torus);
        assert_eq!(t7.euler_characteristic(), 0);
        assert!(t7.contractible_edges().is_empty());
        let p6 = examples::rp2_6();
        assert_eq!(p6.topology(), Topology::ProjectivePlane);
        let oct = examples::octahedron();
        assert_eq!(oct.complex().f_vector(), vec![6, 12, 8]);
        assert_eq!(oct.contractible_edges().len(), 12);
    }

    #[test]
    fn rejects_non_surfaces() {
        let two_triangles = SurfaceTriangulation::from_triangles(&[[1, 2, 3], [2, 3, 4]]);
        assert!(matches!(two_triangles, Err(Error::NotClosedSurface(_))));
        let pinched = SurfaceTriangulation::from_triangles(&[
            [1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4],
            [1, 5, 6], [1, 5, 7], [1, 6, 7], [5, 6, 7],
        ]);
        assert!(matches!(pinched, Err(Error::NotClosedSurface(_))));
    }

    #[test]
    fn octahedron_contraction_gives_five_vertex_sphere() {
        let oct = examples::octahedron();
        let c = oct.contract(1, 3).unwrap();
        assert_eq!(c.topology(), Topology::Sphere);
        assert_eq!(c.complex().f_vector(), vec![5, 9, 6]);
    }

    #[test]
    fn split_then_contract_is_identity() {
        let t7 = examples::torus7();
        for p in t7.split_parameters() {
            let s = t7.split_by_parameter(p);
            assert_eq!(s.topology(), Topology::Torus);
            assert_eq!(s.complex().f_vector(), vec![8, 24, 16]);
            let back = s.contract(p.0, 8).unwrap();
            assert_eq!(back, t7);
        }
    }

    #[test]
    fn split_argument_validation() {
        let oct = examples::octahedron();
        let link = oct.link(1).to_vec();
        assert!(oct.split_vertex(1, link[0], link[0], &[]).is_err());
        assert!(oct.split_vertex(1, 2, link[0], &[]).is_err());
        let s = oct.split_vertex(1, link[0], link[1], &[]).unwrap();
        assert!(!s.is_prime());
        assert!(oct.split_vertex(1, link[0], link[2], &[link[3]]).is_ok());
        assert!(oct.split_vertex(1, link[0], link[2], &[link[1], link[3]]).is_err());
    }

    #[test]
    fn separation_of_face_boundary() {
        let oct = examples::octahedron();
        let t = oct.triangles()[0];
        let parts = oct.separate_by_cycle(&t).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|s| s.euler == 1 && s.region.shape() == RegionShape::Disk));
        assert!(oct.separate_by_cycle(&[1, 2, 3, 4]).is_err());
    }

    #[test]
    fn torus7_three_cycles_do_not_separate() {
        let t7 = examples::torus7();
        let missing = t7.missing_triangles();
        assert_eq!(missing.len(), 35 - 14);
        for t in missing {
            assert_eq!(t7.separate_by_cycle(&t).unwrap().len(), 1);
        }
        assert!(t7.is_prime());
    }

    #[test]
    fn stacked_octahedron_is_not_prime() {
        let oct = examples::octahedron();
        let link = oct.link(1).to_vec();
        let stacked = oct.split_vertex(1, link[0], link[1], &[]).unwrap();
        assert_eq!(stacked.n(), 7);
        assert!(!stacked.is_prime());
        assert!(oct.is_prime());
    }
}
