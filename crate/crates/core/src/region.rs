//! Surface-embeddable pure 2-complexes with boundary, used as carriers of critical regions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{opposite_edge, SurfaceTriangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexClass {
    Internal,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeClass {
    Internal,
    Boundary,
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionShape {
    Disk,
    PinchedDisk,
    MoebiusStrip,
    Other,
}

impl fmt::Display for RegionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionShape::Disk => "disk",
            RegionShape::PinchedDisk => "pinched-disk",
            RegionShape::MoebiusStrip => "moebius-strip",
            RegionShape::Other => "other",
        })
    }
}

/// A pure 2-complex whose vertex links are single paths or cycles, except at pinch points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<[u32; 3]>", try_from = "Vec<[u32; 3]>")]
pub struct Region {
    triangles: Vec<[u32; 3]>,
    vertex_class: BTreeMap<u32, VertexClass>,
    edge_class: BTreeMap<[u32; 2], EdgeClass>,
    shape: RegionShape,
    euler: i64,
    orientable: bool,
}

impl From<Region> for Vec<[u32; 3]> {
    fn from(r: Region) -> Self {
        r.triangles
    }
}

impl TryFrom<Vec<[u32; 3]>> for Region {
    type Error = Error;

    fn try_from(triangles: Vec<[u32; 3]>) -> Result<Self> {
        Region::new(triangles)
    }
}

/// Classifies `triangles`, which must be triangles of `k`.
pub fn classify_region(k: &SurfaceTriangulation, triangles: &[[u32; 3]]) -> Result<Region> {
    Region::from_surface(k, triangles.to_vec())
}

impl Region {
    pub(crate) fn from_surface(k: &SurfaceTriangulation, triangles: Vec<[u32; 3]>) -> Result<Self> {
        for t in &triangles {
            if !k.is_triangle(t[0], t[1], t[2]) {
                return Err(Error::NotARegion(format!("{t:?} is not a triangle of the surface")));
            }
        }
        Self::new(triangles)
    }

    /// Builds a region from triangles, checking surface embeddability locally.
    pub fn new(triangles: Vec<[u32; 3]>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::NotARegion("no triangles".into()));
        }
        let mut tris: Vec<[u32; 3]> = triangles
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        tris.sort_unstable();
        if tris.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotARegion("repeated triangle".into()));
        }
        if tris.iter().any(|t| t[0] == 0 || t[0] == t[1] || t[1] == t[2]) {
            return Err(Error::NotARegion("degenerate triangle".into()));
        }

        let mut edge_count: BTreeMap<[u32; 2], usize> = BTreeMap::new();
        let mut links: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for t in &tris {
            for i in 0..3 {
                let (a, b) = opposite_edge(t, i);
                *edge_count.entry([a, b]).or_default() += 1;
                links.entry(t[i]).or_default().push((a, b));
            }
        }
        if let Some((e, _)) = edge_count.iter().find(|(_, &c)| c > 2) {
            return Err(Error::NotARegion(format!("edge {e:?} lies in more than two triangles")));
        }
        let mut link_components: BTreeMap<u32, usize> = BTreeMap::new();
        for (&v, edges) in &links {
            let (components, has_cycle) = path_components(edges)
                .ok_or_else(|| Error::NotARegion(format!("link of {v} branches")))?;
            if has_cycle && components > 1 {
                return Err(Error::NotARegion(format!("link of {v} is a cycle plus more")));
            }
            link_components.insert(v, components);
        }

        let mut vertex_class: BTreeMap<u32, VertexClass> = links.keys().map(|&v| (v, VertexClass::Internal)).collect();
        for (e, &c) in &edge_count {
            if c == 1 {
                vertex_class.insert(e[0], VertexClass::Boundary);
                vertex_class.insert(e[1], VertexClass::Boundary);
            }
        }
        let edge_class: BTreeMap<[u32; 2], EdgeClass> = edge_count
            .iter()
            .map(|(&e, &c)| {
                let class = if c == 1 {
                    EdgeClass::Boundary
                } else if vertex_class[&e[0]] == VertexClass::Internal || vertex_class[&e[1]] == VertexClass::Internal {
                    EdgeClass::Internal
                } else {
                    EdgeClass::Diagonal
                };
                (e, class)
            })
            .collect();

        let euler = vertex_class.len() as i64 - edge_count.len() as i64 + tris.len() as i64;
        let (orientable, connected) = orient_region(&tris);
        let mut region = Self { triangles: tris, vertex_class, edge_class, shape: RegionShape::Other, euler, orientable };
        if connected {
            region.shape = region.detect_shape(&link_components);
        }
        Ok(region)
    }

    fn detect_shape(&self, link_components: &BTreeMap<u32, usize>) -> RegionShape {
        let boundary: Vec<[u32; 2]> = self.boundary_edges().collect();
        if boundary.is_empty() {
            return RegionShape::Other;
        }
        let mut degree: BTreeMap<u32, usize> = BTreeMap::new();
        for e in &boundary {
            *degree.entry(e[0]).or_default() += 1;
            *degree.entry(e[1]).or_default() += 1;
        }
        if !graph_connected(&boundary) {
            return RegionShape::Other;
        }
        let simple = degree.values().all(|&d| d == 2) && link_components.values().all(|&c| c == 1);
        let pinches: Vec<u32> = degree.iter().filter(|(_, &d)| d != 2).map(|(&v, _)| v).collect();
        match (self.euler, self.orientable) {
            (1, true) if simple => RegionShape::Disk,
            (0, false) if simple => RegionShape::MoebiusStrip,
            (0, true)
                if pinches.len() == 1
                    && degree[&pinches[0]] == 4
                    && link_components[&pinches[0]] == 2
                    && link_components.iter().all(|(v, &c)| *v == pinches[0] || c == 1) =>
            {
                RegionShape::PinchedDisk
            }
            _ => RegionShape::Other,
        }
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn shape(&self) -> RegionShape {
        self.shape
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.euler
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn vertex_class(&self, v: u32) -> Option<VertexClass> {
        self.vertex_class.get(&v).copied()
    }

    pub fn edge_class(&self, a: u32, b: u32) -> Option<EdgeClass> {
        self.edge_class.get(&[a.min(b), a.max(b)]).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertex_class.keys().copied()
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertex_class.iter().filter(|(_, &c)| c == VertexClass::Internal).map(|(&v, _)| v)
    }

    pub fn boundary_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertex_class.iter().filter(|(_, &c)| c == VertexClass::Boundary).map(|(&v, _)| v)
    }

    fn edges_of(&self, class: EdgeClass) -> impl Iterator<Item = [u32; 2]> + '_ {
        self.edge_class.iter().filter(move |(_, &c)| c == class).map(|(&e, _)| e)
    }

    pub fn internal_edges(&self) -> impl Iterator<Item = [u32; 2]> + '_ {
        self.edges_of(EdgeClass::Internal)
    }

    pub fn boundary_edges(&self) -> impl Iterator<Item = [u32; 2]> + '_ {
        self.edges_of(EdgeClass::Boundary)
    }

    pub fn diagonals(&self) -> impl Iterator<Item = [u32; 2]> + '_ {
        self.edges_of(EdgeClass::Diagonal)
    }

    /// Number of boundary vertices.
    pub fn boundary_count(&self) -> usize {
        self.boundary_vertices().count()
    }

    pub fn internal_vertex_count(&self) -> usize {
        self.internal_vertices().count()
    }

    pub fn internal_edge_count(&self) -> usize {
        self.internal_edges().count()
    }

    /// Dual graph connectivity where triangles are adjacent across internal edges.
    pub fn is_internally_1_connected(&self) -> bool {
        let mut by_edge: BTreeMap<[u32; 2], Vec<usize>> = BTreeMap::new();
        for (i, t) in self.triangles.iter().enumerate() {
            for j in 0..3 {
                let (a, b) = opposite_edge(t, j);
                if self.edge_class[&[a, b]] == EdgeClass::Internal {
                    by_edge.entry([a, b]).or_default().push(i);
                }
            }
        }
        let mut uf = UnionFind::new(self.triangles.len());
        for pair in by_edge.values() {
            if let [x, y] = pair[..] {
                uf.union(x, y);
            }
        }
        (0..self.triangles.len()).all(|i| uf.find(i) == uf.find(0))
    }

    /// The subgraph induced on internal vertices is connected.
    pub fn is_internally_connected(&self) -> bool {
        let internal: Vec<u32> = self.internal_vertices().collect();
        if internal.is_empty() {
            return true;
        }
        let index: BTreeMap<u32, usize> = internal.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(internal.len());
        for e in self.internal_edges() {
            if let (Some(&x), Some(&y)) = (index.get(&e[0]), index.get(&e[1])) {
                uf.union(x, y);
            }
        }
        (0..internal.len()).all(|i| uf.find(i) == uf.find(0))
    }

    /// Number of boundary neighbors of each internal vertex.
    pub fn boundary_degrees(&self) -> BTreeMap<u32, usize> {
        let mut out: BTreeMap<u32, usize> = self.internal_vertices().map(|v| (v, 0)).collect();
        for e in self.internal_edges() {
            let (c0, c1) = (self.vertex_class[&e[0]], self.vertex_class[&e[1]]);
            if c0 == VertexClass::Boundary {
                *out.get_mut(&e[1]).expect("internal endpoint") += 1;
            } else if c1 == VertexClass::Boundary {
                *out.get_mut(&e[0]).expect("internal endpoint") += 1;
            }
        }
        out
    }

    /// Image of the region under contracting `gone` onto `keep` followed by label recompaction.
    pub(crate) fn contracted(&self, keep: u32, gone: u32) -> Vec<[u32; 3]> {
        let map = |v: u32| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        self.triangles
            .iter()
            .filter(|t| !(t.contains(&keep) && t.contains(&gone)))
            .map(|t| {
                let mut m = [map(t[0]), map(t[1]), map(t[2])];
                m.sort_unstable();
                m
            })
            .collect()
    }
}

/// Components of a graph with maximum degree 2, and whether any is a cycle.
fn path_components(edges: &[(u32, u32)]) -> Option<(usize, bool)> {
    let mut degree: BTreeMap<u32, usize> = BTreeMap::new();
    for &(a, b) in edges {
        *degree.entry(a).or_default() += 1;
        *degree.entry(b).or_default() += 1;
    }
    if degree.values().any(|&d| d > 2) {
        return None;
    }
    let index: BTreeMap<u32, usize> = degree.keys().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(index.len());
    for &(a, b) in edges {
        uf.union(index[&a], index[&b]);
    }
    let roots: BTreeSet<usize> = (0..index.len()).map(|i| uf.find(i)).collect();
    let components = roots.len();
    // A forest on V vertices has V - components edges; each cycle adds one.
    let has_cycle = edges.len() > index.len() - components;
    Some((components, has_cycle))
}

fn graph_connected(edges: &[[u32; 2]]) -> bool {
    let vertices: BTreeSet<u32> = edges.iter().flatten().copied().collect();
    let index: BTreeMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(index.len());
    for e in edges {
        uf.union(index[&e[0]], index[&e[1]]);
    }
    (0..index.len()).all(|i| uf.find(i) == uf.find(0))
}

/// Orientation propagation across shared edges; returns (orientable, connected through vertices).
fn orient_region(tris: &[[u32; 3]]) -> (bool, bool) {
    let mut by_edge: BTreeMap<[u32; 2], Vec<usize>> = BTreeMap::new();
    for (i, t) in tris.iter().enumerate() {
        for j in 0..3 {
            let (a, b) = opposite_edge(t, j);
            by_edge.entry([a, b]).or_default().push(i);
        }
    }
    let mut adj: Vec<Vec<(usize, [u32; 2])>> = vec![Vec::new(); tris.len()];
    for (e, ts) in &by_edge {
        if let [x, y] = ts[..] {
            adj[x].push((y, *e));
            adj[y].push((x, *e));
        }
    }
    let dir = |t: &[u32; 3], a: u32, b: u32| -> i8 {
        let pa = t.iter().position(|&x| x == a).expect("edge in triangle");
        if t[(pa + 1) % 3] == b {
            1
        } else {
            -1
        }
    };
    let mut sign = vec![0i8; tris.len()];
    let mut orientable = true;
    for start in 0..tris.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for &(u, [a, b]) in &adj[t] {
                let want = -sign[t] * dir(&tris[t], a, b) * dir(&tris[u], a, b);
                if sign[u] == 0 {
                    sign[u] = want;
                    stack.push(u);
                } else if sign[u] != want {
                    orientable = false;
                }
            }
        }
    }
    let vertices: BTreeSet<u32> = tris.iter().flatten().copied().collect();
    let index: BTreeMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(index.len());
    for t in tris {
        uf.union(index[&t[0]], index[&t[1]]);
        uf.union(index[&t[0]], index[&t[2]]);
    }
    let connected = (0..index.len()).all(|i| uf.find(i) == uf.find(0));
    (orientable, connected)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    #[test]
    fn single_triangle() {
        let r = Region::new(vec![[1, 2, 3]]).unwrap();
        assert_eq!(r.shape(), RegionShape::Disk);
        assert_eq!(r.boundary_count(), 3);
        assert_eq!(r.internal_vertex_count(), 0);
        assert_eq!(r.internal_edge_count(), 0);
        assert!(r.is_internally_1_connected());
    }

    #[test]
    fn vertex_star() {
        let r = Region::new(vec![[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6]]).unwrap();
        assert_eq!(r.shape(), RegionShape::Disk);
        assert_eq!(r.boundary_count(), 5);
        assert_eq!(r.internal_vertex_count(), 1);
        assert_eq!(r.internal_edge_count(), 5);
        assert_eq!(r.diagonals().count(), 0);
    }

    #[test]
    fn disk_with_diagonal() {
        let r = Region::new(vec![[1, 2, 3], [1, 3, 4]]).unwrap();
        assert_eq!(r.shape(), RegionShape::Disk);
        assert_eq!(r.diagonals().collect::<Vec<_>>(), vec![[1, 3]]);
        assert!(!r.is_internally_1_connected());
    }

    #[test]
    fn glued_hexagon_strip() {
        let r = standard::glued_hexagon_moebius();
        assert_eq!(r.shape(), RegionShape::MoebiusStrip);
        assert_eq!(r.boundary_count(), 4);
        assert_eq!(r.internal_vertex_count(), 3);
        assert_eq!(r.internal_edge_count(), 12);
        assert_eq!(r.diagonals().count(), 1);
        assert!(r.is_internally_1_connected());
    }

    #[test]
    fn rejects_branching() {
        let r = Region::new(vec![[1, 2, 3], [1, 2, 4], [1, 2, 5]]);
        assert!(r.is_err());
    }

    #[test]
    fn pinched_hexagon() {
        // Hexagon a b c a' d e around three internal vertices, with a' glued to a.
        let hex = standard::hexagon_three_internal();
        let glued: Vec<[u32; 3]> = hex
            .iter()
            .map(|t| {
                let mut m = t.map(|v| if v == 4 { 1 } else { v });
                m.sort_unstable();
                m
            })
            .collect();
        let r = Region::new(glued).unwrap();
        assert_eq!(r.shape(), RegionShape::PinchedDisk);
        assert_eq!(r.boundary_count(), 5);
    }
}
