//! Small named triangulations and constructions used as fixtures and seeds.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::region::Region;
use crate::surface::{sorted3, SurfaceTriangulation};

fn surface(tris: &[[u32; 3]]) -> SurfaceTriangulation {
    SurfaceTriangulation::from_triangles(tris).expect("fixture is a closed surface")
}

/// Boundary of the tetrahedron.
pub fn tetrahedron() -> SurfaceTriangulation {
    surface(&[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])
}

/// Boundary of the octahedron; antipodal pairs are `{1,2}`, `{3,4}`, `{5,6}`.
pub fn octahedron() -> SurfaceTriangulation {
    let mut tris = Vec::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                tris.push([a, b, c]);
            }
        }
    }
    surface(&tris)
}

/// The 7-vertex torus with complete 1-skeleton.
pub fn torus7() -> SurfaceTriangulation {
    let mut tris = Vec::new();
    for i in 0..7u32 {
        tris.push(sorted3(i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1));
        tris.push(sorted3(i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1));
    }
    surface(&tris)
}

/// The 6-vertex projective plane (antipodal quotient of the icosahedron).
pub fn rp2_6() -> SurfaceTriangulation {
    surface(&[
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
        [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6],
    ])
}

/// Glues `b` to `a` along the triangle `ta` of `a` and `tb` of `b` (matched in order), then
/// deletes that triangle. The remaining vertices of `b` get fresh labels.
pub fn glue_along_triangle(
    a: &SurfaceTriangulation,
    ta: [u32; 3],
    b: &SurfaceTriangulation,
    tb: [u32; 3],
) -> Option<SurfaceTriangulation> {
    if !a.is_triangle(ta[0], ta[1], ta[2]) || !b.is_triangle(tb[0], tb[1], tb[2]) {
        return None;
    }
    let mut map = vec![0u32; b.n() + 1];
    for i in 0..3 {
        map[tb[i] as usize] = ta[i];
    }
    let mut next = a.n() as u32;
    for v in 1..=b.n() {
        if map[v] == 0 {
            next += 1;
            map[v] = next;
        }
    }
    let cut_a = sorted3(ta[0], ta[1], ta[2]);
    let cut_b = sorted3(tb[0], tb[1], tb[2]);
    let mut tris: Vec<[u32; 3]> = a.triangles().iter().filter(|&&t| t != cut_a).copied().collect();
    tris.extend(
        b.triangles()
            .iter()
            .filter(|&&t| t != cut_b)
            .map(|t| sorted3(map[t[0] as usize], map[t[1] as usize], map[t[2] as usize])),
    );
    SurfaceTriangulation::from_triangles(&tris).ok()
}

/// Klein bottle on 9 vertices: two 6-vertex projective planes glued along a triangle.
pub fn klein9() -> SurfaceTriangulation {
    let p = rp2_6();
    glue_along_triangle(&p, [1, 2, 3], &p, [1, 2, 3]).expect("connected sum of two projective planes")
}

/// The Möbius strip obtained from a hexagon with three internal vertices by gluing
/// two opposite sides. Boundary cycle `3-2-1-4`, diagonal `{1,3}`, internal vertices `5,6,7`.
pub fn glued_hexagon_moebius() -> Region {
    Region::new(vec![
        [1, 3, 5], [2, 3, 5], [1, 2, 6], [1, 3, 6], [3, 4, 7],
        [1, 4, 7], [2, 5, 6], [3, 6, 7], [1, 5, 7], [5, 6, 7],
    ])
    .expect("fixture is a region")
}

/// Hexagon `1..=6` with internal vertices `7,8,9`, each adjacent to three consecutive boundary vertices.
pub fn hexagon_three_internal() -> Vec<[u32; 3]> {
    vec![
        [1, 2, 7], [2, 3, 7], [3, 4, 8], [4, 5, 8], [5, 6, 9],
        [1, 6, 9], [3, 7, 8], [5, 8, 9], [1, 7, 9], [7, 8, 9],
    ]
}

/// Applies `count` uniformly random vertex splits.
pub fn random_splits<R: Rng>(start: &SurfaceTriangulation, count: usize, rng: &mut R) -> SurfaceTriangulation {
    let mut cur = start.clone();
    for _ in 0..count {
        let v = rng.random_range(1..=cur.n() as u32);
        let k = cur.degree(v);
        let i = rng.random_range(0..k);
        let mut j = rng.random_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        cur = cur.split_by_parameter((v, i.min(j), i.max(j)));
    }
    cur
}

/// Contracts uniformly random contractible edges until none remain or `limit` is reached.
pub fn random_contractions<R: Rng>(start: &SurfaceTriangulation, limit: usize, rng: &mut R) -> SurfaceTriangulation {
    let mut cur = start.clone();
    for _ in 0..limit {
        let edges = cur.contractible_edges();
        let Some(&[a, b]) = edges.choose(rng) else { break };
        cur = cur.contract(a, b).expect("contractible edge");
    }
    cur
}

/// A stacked sphere on `n >= 4` vertices: repeatedly subdivide a random triangle.
pub fn stacked_sphere<R: Rng>(n: usize, rng: &mut R) -> SurfaceTriangulation {
    assert!(n >= 4, "stacked spheres have at least 4 vertices");
    let mut tris = vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]];
    for v in 5..=n as u32 {
        let idx = rng.random_range(0..tris.len());
        let [a, b, c] = tris.swap_remove(idx);
        tris.extend([[a, b, v], [a, c, v], [b, c, v]]);
    }
    surface(&tris)
}
