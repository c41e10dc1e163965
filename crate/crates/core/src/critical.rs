//! Critical regions: detection, the combinatorial criterion, and reduction by admissible
//! contractions.
//!
//! A region is critical when it is internally 1-connected and the rows of its matrix
//! `M_{C,4}` (internal edges against four columns per internal vertex) are independent;
//! it is irreducible when that matrix is square, i.e. it has four internal edges per
//! internal vertex. For disks with at most six boundary vertices, and for the Möbius
//! strips and pinched disks obtained by gluing hexagons, criticality has a combinatorial
//! characterization, which is what the surface algorithms use.

use serde::{Deserialize, Serialize};

use crate::engine::{fresh_specialization, region_rows_independent};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::region::{Region, RegionShape};
use crate::surface::{opposite_edge, SurfaceTriangulation, Topology};

/// Seed of the specialization used for regions outside the characterized shapes.
const RANDOMIZED_SEED: u64 = 0x00c0_ffee;

/// Classification tallies of a region together with its criticality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalReport {
    pub region: Region,
    /// The loop cutting the region out of the ambient triangulation, if it came from a scan.
    pub cycle: Vec<u32>,
    pub shape: RegionShape,
    pub boundary_count: usize,
    pub internal_vertex_count: usize,
    pub internal_edge_count: usize,
    /// Criticality was decided by the combinatorial criterion rather than a random matrix.
    pub is_combinatorial: bool,
    pub is_critical: bool,
    pub is_irreducible: bool,
}

impl CriticalReport {
    /// Critical with fewer internal edges than four per internal vertex.
    pub fn is_reducible(&self) -> bool {
        self.is_critical && self.internal_edge_count < 4 * self.internal_vertex_count
    }
}

/// Builds the report for `region`, deciding criticality combinatorially when possible.
pub fn critical_report(region: Region, cycle: Vec<u32>) -> CriticalReport {
    let (is_combinatorial, is_critical) = match combinatorial_critical_check(&region) {
        Ok(c) => (true, c),
        Err(_) => {
            let needed = region.vertices().max().unwrap_or(4).max(4) as usize;
            let spec = fresh_specialization(needed, RANDOMIZED_SEED, PrimeField::default());
            (false, region.is_internally_1_connected() && region_rows_independent(&region, 4, &spec))
        }
    };
    let m = region.internal_vertex_count();
    let e = region.internal_edge_count();
    CriticalReport {
        shape: region.shape(),
        boundary_count: region.boundary_count(),
        internal_vertex_count: m,
        internal_edge_count: e,
        is_combinatorial,
        is_critical,
        is_irreducible: is_critical && e == 4 * m,
        cycle,
        region,
    }
}

/// The combinatorial criterion on the characterized shapes: internally 1-connected, no
/// diagonal (a Möbius strip has exactly its glued one), no internal vertex with more than
/// four boundary neighbors, and no internal edge joining two internal vertices that both
/// have four boundary neighbors.
///
/// Characterized shapes are disks with 3 to 6 boundary vertices, pinched disks with 5 and
/// Möbius strips with 4 boundary vertices and one diagonal; anything else is an
/// [`Error::UncharacterizedShape`].
pub fn combinatorial_critical_check(region: &Region) -> Result<bool> {
    let b = region.boundary_count();
    let diagonals = region.diagonals().count();
    let diagonals_allowed = match region.shape() {
        RegionShape::Disk if (3..=6).contains(&b) => 0,
        // A strip glued from a hexagon keeps the glued edge as its only diagonal.
        RegionShape::MoebiusStrip if b == 4 && diagonals == 1 => 1,
        RegionShape::PinchedDisk if b == 5 => 0,
        shape => {
            return Err(Error::UncharacterizedShape(format!(
                "{shape} with {b} boundary vertices and {diagonals} diagonals"
            )))
        }
    };
    if diagonals != diagonals_allowed || !region.is_internally_1_connected() {
        return Ok(false);
    }
    let degrees = region.boundary_degrees();
    if degrees.values().any(|&d| d > 4) {
        return Ok(false);
    }
    let saturated_pair = region
        .internal_edges()
        .any(|[a, b]| degrees.get(&a) == Some(&4) && degrees.get(&b) == Some(&4));
    Ok(!saturated_pair)
}

/// Which region shapes a scan looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionSearch {
    /// Largest boundary length of a disk.
    pub max_boundary: usize,
    /// Also Möbius strips bounded by four vertices.
    pub moebius: bool,
    /// Also pinched disks with five boundary vertices.
    pub pinched: bool,
}

impl RegionSearch {
    /// Triangular disks only; exhausting them yields a prime triangulation.
    pub const TRIANGULAR: RegionSearch = RegionSearch { max_boundary: 3, moebius: false, pinched: false };
    /// Disks with at most six boundary vertices.
    pub const DISKS: RegionSearch = RegionSearch { max_boundary: 6, moebius: false, pinched: false };
    /// Disks plus the Möbius strips and pinched disks relevant to the Klein bottle.
    pub const KLEIN: RegionSearch = RegionSearch { max_boundary: 6, moebius: true, pinched: true };

    pub fn for_topology(t: Topology) -> Self {
        match t {
            Topology::KleinBottle => Self::KLEIN,
            _ => Self::DISKS,
        }
    }
}

/// First reducible critical region of the shapes appropriate to the surface.
pub fn find_reducible_critical_region(k: &SurfaceTriangulation) -> Option<CriticalReport> {
    find_reducible_critical_region_with(k, RegionSearch::for_topology(k.topology()))
}

/// Scans loops of length 3, 4, ... up to the search bound, least vertex first, and
/// returns the first reducible critical region decided combinatorially.
pub fn find_reducible_critical_region_with(k: &SurfaceTriangulation, search: RegionSearch) -> Option<CriticalReport> {
    let mut scanner = Scanner::new(k);
    for b in 3..=search.max_boundary {
        let mut found = None;
        for_each_cycle(k, b, |cycle| {
            found = scanner.examine_cycle(cycle, search);
            found.is_none()
        });
        if found.is_some() {
            return found;
        }
        if b == 5 && search.pinched {
            if let Some(r) = find_pinched(k) {
                return Some(r);
            }
        }
    }
    None
}

/// Every critical region of the searched shapes cut out by loops, reducible or not.
pub fn critical_regions(k: &SurfaceTriangulation, search: RegionSearch) -> Vec<CriticalReport> {
    let mut out = Vec::new();
    for b in 3..=search.max_boundary {
        for_each_cycle(k, b, |cycle| {
            let edges = k.cycle_edges(cycle).expect("enumerated cycle");
            for sep in k.separate_by_edges(&edges) {
                let wanted = match sep.region.shape() {
                    RegionShape::Disk => true,
                    RegionShape::MoebiusStrip => search.moebius && b == 4,
                    _ => false,
                };
                if wanted && sep.region.boundary_count() == b {
                    let report = critical_report(sep.region, cycle.to_vec());
                    if report.is_critical {
                        out.push(report);
                    }
                }
            }
            true
        });
        if b == 5 && search.pinched {
            for_each_pinched_region(k, |region, cycle| {
                let report = critical_report(region, cycle);
                if report.is_critical {
                    out.push(report);
                }
                true
            });
        }
    }
    out
}

/// Calls `visit` on each simple cycle of length `len` once, as the vertex sequence starting
/// at its least vertex and heading to the lesser of that vertex's two cycle neighbors.
/// Stops early when `visit` returns false.
pub fn for_each_cycle<F: FnMut(&[u32]) -> bool>(k: &SurfaceTriangulation, len: usize, mut visit: F) {
    let n = k.n() as u32;
    let mut path = Vec::with_capacity(len);
    let mut on_path = vec![false; n as usize + 1];
    for root in 1..=n {
        path.clear();
        path.push(root);
        on_path[root as usize] = true;
        let go_on = extend(k, len, &mut path, &mut on_path, &mut visit);
        on_path[root as usize] = false;
        if !go_on {
            return;
        }
    }
}

fn extend<F: FnMut(&[u32]) -> bool>(
    k: &SurfaceTriangulation,
    len: usize,
    path: &mut Vec<u32>,
    on_path: &mut [bool],
    visit: &mut F,
) -> bool {
    let root = path[0];
    let last = *path.last().expect("nonempty path");
    if path.len() == len {
        if path[1] < path[len - 1] && k.is_edge(last, root) {
            return visit(path);
        }
        return true;
    }
    for &next in k.neighbors(last) {
        if next <= root || on_path[next as usize] {
            continue;
        }
        path.push(next);
        on_path[next as usize] = true;
        let go_on = extend(k, len, path, on_path, visit);
        on_path[next as usize] = false;
        path.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Triangle sets of the sides of a separating loop, found by growing both sides at once.
struct Scanner<'a> {
    k: &'a SurfaceTriangulation,
    mark: Vec<u8>,
}

enum Sides {
    NonSeparating,
    /// The side that finished first; the rest of the surface is the other side.
    Separating(Vec<usize>),
}

impl<'a> Scanner<'a> {
    fn new(k: &'a SurfaceTriangulation) -> Self {
        Self { k, mark: vec![0; k.triangles().len()] }
    }

    fn sides(&mut self, cut: &[[u32; 2]]) -> Sides {
        self.mark.iter_mut().for_each(|m| *m = 0);
        let [e0, e1] = cut[0];
        let seeds = self.k.edge_triangles(e0, e1).expect("loop edge");
        let mut queues = [vec![seeds[0]], vec![seeds[1]]];
        let mut heads = [0usize, 0];
        self.mark[seeds[0]] = 1;
        self.mark[seeds[1]] = 2;
        loop {
            for side in 0..2 {
                let own = side as u8 + 1;
                if heads[side] == queues[side].len() {
                    return Sides::Separating(std::mem::take(&mut queues[side]));
                }
                let t = queues[side][heads[side]];
                heads[side] += 1;
                let tri = self.k.triangles()[t];
                let adj = self.k.triangle_neighbors(t);
                for i in 0..3 {
                    let (a, b) = opposite_edge(&tri, i);
                    if cut.contains(&[a, b]) {
                        continue;
                    }
                    let u = adj[i] as usize;
                    match self.mark[u] {
                        0 => {
                            self.mark[u] = own;
                            queues[side].push(u);
                        }
                        m if m != own => return Sides::NonSeparating,
                        _ => {}
                    }
                }
            }
        }
    }

    fn complement(&self, side: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.k.triangles().len()];
        side.iter().for_each(|&t| inside[t] = true);
        (0..inside.len()).filter(|&t| !inside[t]).collect()
    }

    fn examine_cycle(&mut self, cycle: &[u32], search: RegionSearch) -> Option<CriticalReport> {
        let b = cycle.len();
        let mut cut: Vec<[u32; 2]> = (0..b)
            .map(|p| {
                let (x, y) = (cycle[p], cycle[(p + 1) % b]);
                [x.min(y), x.max(y)]
            })
            .collect();
        cut.sort_unstable();
        let Sides::Separating(first) = self.sides(&cut) else {
            return None;
        };
        let second = self.complement(&first);
        for side in [first, second] {
            if let Some(r) = self.examine_side(&side, cycle, search) {
                return Some(r);
            }
        }
        None
    }

    fn examine_side(&self, side: &[usize], cycle: &[u32], search: RegionSearch) -> Option<CriticalReport> {
        let b = cycle.len();
        let tris: Vec<[u32; 3]> = side.iter().map(|&t| self.k.triangles()[t]).collect();
        let (v, e, f) = counts(&tris);
        let euler = v as i64 - e as i64 + f as i64;
        // One boundary loop: euler 1 is a disk, euler 0 a Möbius strip.
        let internal = v - b;
        let reducible_size = match euler {
            1 => internal > b - 3,
            0 if search.moebius && b == 4 => internal > 3,
            _ => false,
        };
        if !reducible_size {
            return None;
        }
        let region = Region::new(tris).ok()?;
        let report = critical_report(region, cycle.to_vec());
        (report.is_combinatorial && report.is_reducible()).then_some(report)
    }
}

fn counts(tris: &[[u32; 3]]) -> (usize, usize, usize) {
    let mut vertices: Vec<u32> = tris.iter().flatten().copied().collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut edges: Vec<(u32, u32)> = tris.iter().flat_map(|t| [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])]).collect();
    edges.sort_unstable();
    edges.dedup();
    (vertices.len(), edges.len(), tris.len())
}

/// Calls `visit` on each pinched disk with five boundary vertices: the side of two
/// triangles `a b c` and `a d e` sharing only `a`. Stops early when `visit` returns false.
pub fn for_each_pinched_region<F: FnMut(Region, Vec<u32>) -> bool>(k: &SurfaceTriangulation, mut visit: F) {
    let n = k.n() as u32;
    for a in 1..=n {
        let nb = k.neighbors(a);
        let mut loops: Vec<(u32, u32)> = Vec::new();
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                if k.is_edge(x, y) {
                    loops.push((x, y));
                }
            }
        }
        for (i, &(b, c)) in loops.iter().enumerate() {
            for &(d, e) in &loops[i + 1..] {
                if b == d || b == e || c == d || c == e {
                    continue;
                }
                let edge = |x: u32, y: u32| [x.min(y), x.max(y)];
                let mut cut = vec![edge(a, b), edge(b, c), edge(a, c), edge(a, d), edge(d, e), edge(a, e)];
                cut.sort_unstable();
                for sep in k.separate_by_edges(&cut) {
                    if sep.region.shape() == RegionShape::PinchedDisk
                        && sep.region.boundary_count() == 5
                        && !visit(sep.region, vec![a, b, c, a, d, e])
                    {
                        return;
                    }
                }
            }
        }
    }
}

fn find_pinched(k: &SurfaceTriangulation) -> Option<CriticalReport> {
    let mut found = None;
    for_each_pinched_region(k, |region, cycle| {
        let report = critical_report(region, cycle);
        if report.is_combinatorial && report.is_reducible() {
            found = Some(report);
        }
        found.is_none()
    });
    found
}

/// An internal edge whose contraction is valid in `k`, removes exactly three internal edges,
/// keeps the shape and boundary, and leaves a region passing the combinatorial check.
pub fn admissible_contraction(k: &SurfaceTriangulation, region: &Region) -> Option<[u32; 2]> {
    admissible_step(k, region).map(|(e, _, _)| e)
}

fn admissible_step(k: &SurfaceTriangulation, region: &Region) -> Option<([u32; 2], SurfaceTriangulation, Region)> {
    let before = region.internal_edge_count();
    for [a, b] in region.internal_edges() {
        if !k.is_contractible(a, b) {
            continue;
        }
        let Ok(next) = Region::new(region.contracted(a, b)) else {
            continue;
        };
        if next.shape() != region.shape()
            || next.boundary_count() != region.boundary_count()
            || next.internal_edge_count() + 3 != before
            || !combinatorial_critical_check(&next).unwrap_or(false)
        {
            continue;
        }
        let contracted = k.contract(a, b).expect("contractible edge");
        return Some(([a, b], contracted, next));
    }
    None
}

/// One contraction of a reduction, in the labels of the triangulation it was applied to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub edge: [u32; 2],
    pub boundary: usize,
    pub shape: RegionShape,
    pub vertices_before: usize,
}

/// Contracts admissible edges until the region is irreducible.
pub fn reduce_to_irreducible(
    k: &SurfaceTriangulation,
    region: &Region,
) -> Result<(SurfaceTriangulation, Region, Vec<ContractionStep>)> {
    let mut cur = k.clone();
    let mut reg = region.clone();
    let mut steps = Vec::new();
    while reg.internal_edge_count() < 4 * reg.internal_vertex_count() {
        let Some((edge, next_k, next_r)) = admissible_step(&cur, &reg) else {
            return Err(Error::TheoremContract(format!(
                "no admissible contraction in a reducible critical {} with {} boundary and {} internal vertices",
                reg.shape(),
                reg.boundary_count(),
                reg.internal_vertex_count()
            )));
        };
        steps.push(ContractionStep {
            edge,
            boundary: reg.boundary_count(),
            shape: reg.shape(),
            vertices_before: cur.n(),
        });
        cur = next_k;
        reg = next_r;
    }
    Ok((cur, reg, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    fn quad_with(internal: &[[u32; 3]]) -> Region {
        Region::new(internal.to_vec()).unwrap()
    }

    #[test]
    fn characterized_examples() {
        let quad = quad_with(&[[1, 2, 5], [2, 3, 5], [3, 4, 5], [1, 4, 5]]);
        assert_eq!(combinatorial_critical_check(&quad).unwrap(), true);
        let pent = quad_with(&[[1, 2, 6], [2, 3, 6], [3, 4, 6], [4, 5, 6], [1, 5, 6]]);
        assert_eq!(combinatorial_critical_check(&pent).unwrap(), false);
        let hex = Region::new(standard::hexagon_three_internal()).unwrap();
        assert_eq!(combinatorial_critical_check(&hex).unwrap(), true);
        let r = critical_report(hex, vec![]);
        assert!(r.is_irreducible);
        let strip = standard::glued_hexagon_moebius();
        assert_eq!(combinatorial_critical_check(&strip).unwrap(), true);
    }

    #[test]
    fn uncharacterized_shape_is_an_error() {
        let big: Vec<[u32; 3]> = (0..7).map(|i| [i + 1, (i + 1) % 7 + 1, 8]).map(|mut t| { t.sort_unstable(); t }).collect();
        let heptagon = Region::new(big).unwrap();
        assert!(combinatorial_critical_check(&heptagon).is_err());
    }

    #[test]
    fn cycles_are_enumerated_once() {
        let oct = standard::octahedron();
        let mut three = 0;
        for_each_cycle(&oct, 3, |_| {
            three += 1;
            true
        });
        assert_eq!(three, 8);
        let mut four = 0;
        for_each_cycle(&oct, 4, |_| {
            four += 1;
            true
        });
        // 3 equators plus 12 quadrilaterals around each edge.
        assert_eq!(four, 15);
    }

    #[test]
    fn stacked_torus_has_triangular_region() {
        let t = standard::torus7();
        let link = t.link(1).to_vec();
        let stacked = t.split_vertex(1, link[0], link[1], &[]).unwrap();
        let r = find_reducible_critical_region(&stacked).expect("stacked vertex gives a reducible disk");
        assert_eq!(r.boundary_count, 3);
        assert!(find_reducible_critical_region(&t).is_none());
        let (reduced, region, steps) = reduce_to_irreducible(&stacked, &r.region).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(region.triangles().len(), 1);
        assert_eq!(crate::canonical::canonical_form(&reduced), crate::canonical::canonical_form(&t));
    }

    #[test]
    fn irreducible_region_needs_no_contraction() {
        let t = standard::torus7();
        let tri = Region::new(vec![t.triangles()[0]]).unwrap();
        assert!(admissible_contraction(&t, &tri).is_none());
    }
}
