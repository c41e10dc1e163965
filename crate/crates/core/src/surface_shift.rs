//! Deterministic shifting of triangulated tori, projective planes and Klein bottles.
//!
//! Each algorithm contracts admissible edges inside reducible critical regions. Triangles
//! of the shift are read off the first prime stage. Edges come from the critically
//! irreducible end stage: by a closed formula when it is large, otherwise from an exact
//! small-case shift, whose tail at `(5,6)` carries over to the input unchanged.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::Face;
use crate::critical::{find_reducible_critical_region_with, reduce_to_irreducible, ContractionStep, RegionSearch};
use crate::engine::{shift_complex, EngineConfig};
use crate::error::{Error, Result};
use crate::lex::{self, lex_prefix, tail_lex};
use crate::region::RegionShape;
use crate::result::{Certification, ShiftResult};
use crate::surface::{SurfaceTriangulation, Topology};

/// End-stage size from which a critically irreducible torus has edges `<=_lex (4,10)`.
pub const TORUS_LARGE: usize = 11;
/// End-stage size from which a critically irreducible Klein bottle has edges `<=_lex (4,10)`.
pub const KLEIN_LARGE: usize = 13;

/// Exact shifts of small critically irreducible triangulations.
pub trait SmallCases {
    fn lookup(&self, k: &SurfaceTriangulation) -> Option<ShiftResult>;
}

/// One stage of a reduction: the triangulation after contracting `step.edge`.
#[derive(Clone, Debug)]
pub struct ReductionStage {
    pub triangulation: SurfaceTriangulation,
    pub step: ContractionStep,
    /// Index of the critical region (in order found) the contraction belongs to.
    pub region: usize,
}

/// The full sequence of stages from an input to its critically irreducible reduction.
#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub original: SurfaceTriangulation,
    pub stages: Vec<ReductionStage>,
    /// Number of stages before the first prime one; `0` when the input is prime.
    pub first_prime: usize,
    pub regions: usize,
}

impl ReductionTrace {
    /// The triangulation after `i` stages.
    pub fn stage(&self, i: usize) -> &SurfaceTriangulation {
        match i {
            0 => &self.original,
            _ => &self.stages[i - 1].triangulation,
        }
    }

    pub fn prime(&self) -> &SurfaceTriangulation {
        self.stage(self.first_prime)
    }

    pub fn last(&self) -> &SurfaceTriangulation {
        self.stage(self.stages.len())
    }

    fn summary(&self) -> TraceSummary {
        TraceSummary {
            steps: self.stages.iter().map(|s| s.step.clone()).collect(),
            input_vertices: self.original.n(),
            prime_vertices: self.prime().n(),
            final_vertices: self.last().n(),
            small_case: None,
            decisions: Vec::new(),
        }
    }
}

/// Serializable digest of a surface computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub steps: Vec<ContractionStep>,
    pub input_vertices: usize,
    pub prime_vertices: usize,
    pub final_vertices: usize,
    /// Where the small-case edges came from, if one was needed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub small_case: Option<String>,
    /// Theorem clauses applied, in order.
    pub decisions: Vec<String>,
}

/// Contracts inside reducible critical regions: first triangular disks until the
/// triangulation is prime, then all shapes in `search`.
pub fn reduce_surface(k: &SurfaceTriangulation, search: RegionSearch) -> Result<ReductionTrace> {
    let mut trace = ReductionTrace { original: k.clone(), stages: Vec::new(), first_prime: 0, regions: 0 };
    let mut cur = k.clone();
    for (phase, phase_search) in [RegionSearch::TRIANGULAR, search].into_iter().enumerate() {
        while let Some(report) = find_reducible_critical_region_with(&cur, phase_search) {
            let (_, _, steps) = reduce_to_irreducible(&cur, &report.region)?;
            for step in steps {
                cur = cur.contract(step.edge[0], step.edge[1])?;
                trace.stages.push(ReductionStage { triangulation: cur.clone(), step, region: trace.regions });
            }
            trace.regions += 1;
        }
        if phase == 0 {
            trace.first_prime = trace.stages.len();
        }
    }
    Ok(trace)
}

/// The edge family `prefix through anchor`, then `(a+1, a+2..=l)`, then `tail`, where
/// `anchor = (a, n)` and `l` is fixed by the budget.
pub fn edges_from_tail(n: usize, anchor: [u32; 2], budget: usize, tail: &[Face]) -> Result<Vec<Face>> {
    let [a, last] = anchor;
    if last as usize != n || a == 0 || a >= last {
        return Err(Error::EdgeBudget(format!("anchor ({a},{last}) must end a row of [{n}]")));
    }
    let row = a + 1;
    if let Some(bad) = tail.iter().find(|f| f.len() != 2 || f[0] <= row || f[1] as usize > n || f[0] >= f[1]) {
        return Err(Error::EdgeBudget(format!("tail edge {bad:?} not after row {row} in [{n}]")));
    }
    let mut edges = lex_prefix(n, &[a, last]);
    let used = edges.len() + tail.len();
    let extra = budget
        .checked_sub(used)
        .ok_or_else(|| Error::EdgeBudget(format!("prefix and tail need {used} edges, budget is {budget}")))?;
    let end = row as usize + extra;
    if end > n {
        return Err(Error::EdgeBudget(format!("row {row} would run to {end} beyond {n}")));
    }
    edges.extend((row + 1..=end as u32).map(|x| vec![row, x]));
    edges.extend(tail.iter().cloned());
    edges.sort();
    edges.dedup();
    if edges.len() != budget {
        return Err(Error::EdgeBudget("tail overlaps the prefix".into()));
    }
    let vertices: Vec<Face> = (1..=n as u32).map(|v| vec![v]).collect();
    if !lex::is_shifted(&[vertices, edges.clone()]) {
        return Err(Error::EdgeBudget(format!("edges with tail {tail:?} are not shifted")));
    }
    Ok(edges)
}

/// A named family of maximal faces from the classification of shifted surfaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MaximalFaceClass {
    T1,
    T2,
    T3,
    T4,
    P1,
    P2,
    KB1,
    KB2,
    KB3,
}

impl fmt::Display for MaximalFaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl MaximalFaceClass {
    pub const TORUS: [MaximalFaceClass; 4] = [Self::T1, Self::T2, Self::T3, Self::T4];
    pub const PROJECTIVE_PLANE: [MaximalFaceClass; 2] = [Self::P1, Self::P2];
    pub const KLEIN_BOTTLE: [MaximalFaceClass; 3] = [Self::KB1, Self::KB2, Self::KB3];

    pub fn for_topology(t: Topology) -> &'static [MaximalFaceClass] {
        match t {
            Topology::Torus => &Self::TORUS,
            Topology::ProjectivePlane => &Self::PROJECTIVE_PLANE,
            Topology::KleinBottle => &Self::KLEIN_BOTTLE,
            _ => &[],
        }
    }

    /// The generating faces on `n` vertices; `None` if a label exceeds `n`.
    pub fn generators(self, n: usize) -> Option<Vec<Face>> {
        let m = n as u32;
        let faces: Vec<Face> = match self {
            Self::T1 => vec![vec![2, 3, 4], vec![1, 3, m], vec![1, 4, 7], vec![1, 5, 6], vec![3, m], vec![6, 7]],
            Self::T2 => vec![vec![2, 3, 4], vec![1, 3, m], vec![1, 4, 8], vec![3, m], vec![4, 8], vec![5, 7]],
            Self::T3 => vec![vec![2, 3, 4], vec![1, 3, m], vec![1, 4, 8], vec![3, m], vec![4, 9], vec![5, 6]],
            Self::T4 => vec![vec![2, 3, 4], vec![1, 3, m], vec![1, 4, 8], vec![3, m], vec![4, 10]],
            Self::P1 => vec![vec![1, 3, m], vec![1, 5, 6], vec![3, m], vec![5, 6]],
            Self::P2 => vec![vec![1, 3, m], vec![1, 4, 7], vec![3, m], vec![4, 7]],
            Self::KB1 => vec![vec![1, 3, m], vec![1, 4, 8], vec![1, 5, 6], vec![3, m], vec![4, 8], vec![5, 7]],
            Self::KB2 => vec![vec![1, 3, m], vec![1, 4, 9], vec![3, m], vec![4, 9], vec![5, 6]],
            Self::KB3 => vec![vec![1, 3, m], vec![1, 4, 9], vec![3, m], vec![4, 10]],
        };
        faces.iter().flatten().all(|&v| v <= m && v > 0).then_some(faces)
    }

    /// The shifted complex generated on `n` vertices.
    pub fn complex(self, n: usize) -> Option<Vec<Vec<Face>>> {
        self.generators(n).map(|g| lex::shifted_closure(&g))
    }
}

/// The class among those of `topology` whose generated complex equals the result.
pub fn classify_maximal_faces(result: &ShiftResult, topology: Topology) -> Option<MaximalFaceClass> {
    MaximalFaceClass::for_topology(topology)
        .iter()
        .copied()
        .find(|c| c.complex(result.n).is_some_and(|faces| faces == result.faces_by_dim))
}

/// Surface algorithms with a source of small-case shifts.
pub struct SurfaceShifter<'a> {
    engine: EngineConfig,
    tables: Option<&'a dyn SmallCases>,
}

impl Default for SurfaceShifter<'_> {
    fn default() -> Self {
        Self { engine: EngineConfig::default(), tables: None }
    }
}

impl<'a> SurfaceShifter<'a> {
    /// Small cases missing from the tables are shifted by the engine with `engine`.
    pub fn new(engine: EngineConfig) -> Self {
        Self { engine, tables: None }
    }

    pub fn with_tables(mut self, tables: &'a dyn SmallCases) -> Self {
        self.tables = Some(tables);
        self
    }

    /// Dispatches on the topology of `k`.
    pub fn shift(&self, k: &SurfaceTriangulation) -> Result<ShiftResult> {
        match k.topology() {
            Topology::Torus => self.shift_torus(k),
            Topology::ProjectivePlane => self.shift_rp2(k),
            Topology::KleinBottle => self.shift_klein(k),
            found => Err(Error::UnsupportedTopology { expected: Topology::Torus, found }),
        }
    }

    fn small_case(&self, k: &SurfaceTriangulation) -> Result<(ShiftResult, String)> {
        if let Some(r) = self.tables.and_then(|t| t.lookup(k)) {
            return Ok((r, "table".into()));
        }
        let r = shift_complex(k.complex(), &self.engine)?;
        if r.certified_by_dim.iter().any(|c| matches!(c, Certification::MonteCarlo(agree) if *agree < self.engine.confirm_seeds)) {
            return Err(Error::SeedDisagreement(format!("small case on {} vertices", k.n())));
        }
        Ok((r, "engine".into()))
    }

    /// Edges from the end stage: the large-case prefix or the tail of a small-case shift.
    fn end_stage_edges(
        &self,
        n: usize,
        end: &SurfaceTriangulation,
        large: usize,
        summary: &mut TraceSummary,
    ) -> Result<(Vec<Face>, Certification)> {
        let (tail, cert) = if end.n() >= large {
            summary.decisions.push(format!("edges: end stage has {} >= {large} vertices, prefix through (4,10)", end.n()));
            (Vec::new(), Certification::CertifiedByTheorem)
        } else {
            let (small, source) = self.small_case(end)?;
            let tail = tail_lex(small.faces(1), &[5, 6]);
            summary.small_case = Some(format!("{source}:{}", crate::canonical::canonical_form(end)));
            summary.decisions.push(format!("edges: tail at (5,6) of the {}-vertex end stage is {tail:?}", end.n()));
            let cert = match small.certified_by_dim[1] {
                Certification::MonteCarlo(k) => Certification::MonteCarlo(k),
                _ => Certification::CertifiedByTheorem,
            };
            (tail, cert)
        };
        Ok((edges_from_tail(n, [3, n as u32], 3 * n, &tail)?, cert))
    }

    pub fn shift_torus(&self, k: &SurfaceTriangulation) -> Result<ShiftResult> {
        expect_topology(k, Topology::Torus)?;
        let n = k.n();
        let trace = reduce_surface(k, RegionSearch::DISKS)?;
        let mut summary = trace.summary();
        let (edges, edge_cert) = self.end_stage_edges(n, trace.last(), TORUS_LARGE, &mut summary)?;
        let prime_n = trace.prime().n();
        let mut triangles = if prime_n >= 8 {
            summary.decisions.push(format!("triangles: prime stage has {prime_n} >= 8 vertices, prefix through (1,4,8) with (2,3,4)"));
            lex_prefix(n, &[1, 4, 8])
        } else {
            summary.decisions.push(format!("triangles: prime stage has {prime_n} vertices, prefix through (1,4,7) with (1,5,6), (2,3,4)"));
            let mut t = lex_prefix(n, &[1, 4, 7]);
            t.push(vec![1, 5, 6]);
            t
        };
        triangles.push(vec![2, 3, 4]);
        triangles.sort();
        assemble(k, edges, edge_cert, triangles, summary)
    }

    pub fn shift_rp2(&self, k: &SurfaceTriangulation) -> Result<ShiftResult> {
        expect_topology(k, Topology::ProjectivePlane)?;
        let n = k.n();
        let trace = reduce_surface(k, RegionSearch::TRIANGULAR)?;
        let mut summary = trace.summary();
        let prime_n = trace.prime().n();
        let mut triangles = lex_prefix(n, &[1, 3, n as u32]);
        let top = if prime_n >= 7 { "(1,4,7)" } else { "(1,5,6)" };
        summary.decisions.push(format!("triangles: prime stage has {prime_n} vertices, prefix through (1,3,{n}) then up to {top}"));
        triangles.extend([vec![1, 4, 5], vec![1, 4, 6]]);
        triangles.push(if prime_n >= 7 { vec![1, 4, 7] } else { vec![1, 5, 6] });
        triangles.sort();
        summary.decisions.push("edges: vertex 1 joined to all, plus the links of vertex 1 in the triangles".into());
        let mut edges: Vec<Face> = (2..=n as u32).map(|x| vec![1, x]).collect();
        edges.extend(triangles.iter().map(|t| vec![t[1], t[2]]));
        edges.sort();
        assemble(k, edges, Certification::CertifiedByTheorem, triangles, summary)
    }

    pub fn shift_klein(&self, k: &SurfaceTriangulation) -> Result<ShiftResult> {
        expect_topology(k, Topology::KleinBottle)?;
        let n = k.n();
        let trace = reduce_surface(k, RegionSearch::KLEIN)?;
        let mut summary = trace.summary();
        let mut has_156 = None;
        for i in 0..=trace.stages.len() {
            if let Some((p, q, sigma)) = klein_rp2_decomposition(trace.stage(i)) {
                let in_both = self.shift_rp2(&p)?.contains(&[1, 5, 6]) && self.shift_rp2(&q)?.contains(&[1, 5, 6]);
                summary.decisions.push(format!(
                    "(1,5,6): stage {i} splits along {sigma:?} into projective planes on {} and {} vertices, member iff in both: {in_both}",
                    p.n(),
                    q.n()
                ));
                has_156 = Some(in_both);
                break;
            }
        }
        let has_156 = match has_156 {
            Some(v) => v,
            None => {
                let m = trace.last().n();
                summary.decisions.push(format!("(1,5,6): no splitting triangle, end stage has {m} vertices, member iff 8"));
                m == 8
            }
        };
        let (edges, edge_cert) = self.end_stage_edges(n, trace.last(), KLEIN_LARGE, &mut summary)?;
        let has_57 = edges.binary_search(&vec![5, 7]).is_ok();
        if has_57 != has_156 {
            return Err(Error::TheoremContract(format!(
                "Klein bottle on {n} vertices: (1,5,6) decided {has_156} but edge (5,7) present is {has_57}"
            )));
        }
        let mut triangles = if has_156 {
            let mut t = lex_prefix(n, &[1, 4, 8]);
            t.push(vec![1, 5, 6]);
            t
        } else {
            lex_prefix(n, &[1, 4, 9])
        };
        triangles.sort();
        assemble(k, edges, edge_cert, triangles, summary)
    }
}

fn expect_topology(k: &SurfaceTriangulation, expected: Topology) -> Result<()> {
    if k.topology() == expected {
        Ok(())
    } else {
        Err(Error::UnsupportedTopology { expected, found: k.topology() })
    }
}

/// Checks budgets, shiftedness and the classification before returning a surface result.
fn assemble(
    k: &SurfaceTriangulation,
    edges: Vec<Face>,
    edge_cert: Certification,
    triangles: Vec<Face>,
    summary: TraceSummary,
) -> Result<ShiftResult> {
    let n = k.n();
    let result = ShiftResult {
        n,
        modulus: None,
        seeds: Vec::new(),
        faces_by_dim: vec![(1..=n as u32).map(|v| vec![v]).collect(), edges, triangles],
        certified_by_dim: vec![Certification::CertifiedByTheorem, edge_cert, Certification::CertifiedByTheorem],
        trace: Some(summary),
    };
    if result.f_vector() != k.complex().f_vector() {
        return Err(Error::TheoremContract(format!(
            "face counts {:?} differ from the input's {:?}",
            result.f_vector(),
            k.complex().f_vector()
        )));
    }
    if !lex::is_shifted(&result.faces_by_dim) {
        return Err(Error::TheoremContract("assembled family is not shifted".into()));
    }
    if classify_maximal_faces(&result, k.topology()).is_none() {
        return Err(Error::TheoremContract(format!(
            "maximal faces {:?} outside the classification for the {}",
            result.maximal_faces(),
            k.topology()
        )));
    }
    Ok(result)
}

/// A missing triangle separating `k` into two Möbius strips, with each strip capped by it.
pub fn klein_rp2_decomposition(k: &SurfaceTriangulation) -> Option<(SurfaceTriangulation, SurfaceTriangulation, [u32; 3])> {
    for sigma in k.missing_triangles() {
        let [a, b, c] = sigma;
        let sides = k.separate_by_edges(&[[a, b], [a, c], [b, c]]);
        if sides.len() != 2 || sides.iter().any(|s| s.region.shape() != RegionShape::MoebiusStrip) {
            continue;
        }
        let capped: Vec<SurfaceTriangulation> = sides
            .iter()
            .filter_map(|s| {
                let mut tris = s.region.triangles().to_vec();
                tris.push(sigma);
                SurfaceTriangulation::from_triangles(&tris).ok()
            })
            .collect();
        if let [p, q] = capped.as_slice() {
            return Some((p.clone(), q.clone(), sigma));
        }
    }
    None
}

/// The surface algorithm and the engine on the same input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub surface: ShiftResult,
    pub generic: ShiftResult,
    pub agree: bool,
}

/// Runs both methods; `agree` compares faces in every dimension.
pub fn verify_surface(k: &SurfaceTriangulation, shifter: &SurfaceShifter<'_>, engine: &EngineConfig) -> Result<Verification> {
    let surface = shifter.shift(k)?;
    let generic = shift_complex(k.complex(), engine)?;
    let agree = surface.same_faces(&generic);
    Ok(Verification { surface, generic, agree })
}

pub fn shift_torus(k: &SurfaceTriangulation) -> Result<ShiftResult> {
    SurfaceShifter::default().shift_torus(k)
}

pub fn shift_rp2(k: &SurfaceTriangulation) -> Result<ShiftResult> {
    SurfaceShifter::default().shift_rp2(k)
}

pub fn shift_klein(k: &SurfaceTriangulation) -> Result<ShiftResult> {
    SurfaceShifter::default().shift_klein(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    #[test]
    fn edges_from_tail_cases() {
        let all = edges_from_tail(7, [3, 7], 21, &[vec![5, 6], vec![5, 7], vec![6, 7]]).unwrap();
        assert_eq!(all, lex::subsets(7, 2).collect::<Vec<_>>());
        let large = edges_from_tail(12, [3, 12], 36, &[]).unwrap();
        assert_eq!(large, lex_prefix(12, &[4, 10]));
        assert!(edges_from_tail(12, [3, 12], 36, &[vec![5, 7]]).is_err());
        assert!(edges_from_tail(12, [3, 12], 60, &[]).is_err());
    }

    #[test]
    fn class_generators() {
        assert!(MaximalFaceClass::T4.generators(9).is_none());
        let t1 = MaximalFaceClass::T1.complex(7).unwrap();
        assert_eq!(t1.iter().map(Vec::len).collect::<Vec<_>>(), vec![7, 21, 14]);
        let p1 = MaximalFaceClass::P1.complex(6).unwrap();
        assert_eq!(p1.iter().map(Vec::len).collect::<Vec<_>>(), vec![6, 15, 10]);
    }

    #[test]
    fn minimal_surfaces() {
        let t = shift_torus(&standard::torus7()).unwrap();
        assert_eq!(classify_maximal_faces(&t, Topology::Torus), Some(MaximalFaceClass::T1));
        let p = shift_rp2(&standard::rp2_6()).unwrap();
        assert_eq!(classify_maximal_faces(&p, Topology::ProjectivePlane), Some(MaximalFaceClass::P1));
        assert!(shift_torus(&standard::octahedron()).is_err());
    }

    #[test]
    fn klein_from_two_planes() {
        let k = standard::klein9();
        let (p, q, _) = klein_rp2_decomposition(&k).unwrap();
        let six = crate::canonical::canonical_form(&standard::rp2_6());
        assert_eq!(crate::canonical::canonical_form(&p), six);
        assert_eq!(crate::canonical::canonical_form(&q), six);
        let r = shift_klein(&k).unwrap();
        let engine = shift_complex(k.complex(), &EngineConfig::default()).unwrap();
        assert!(r.same_faces(&engine), "{:?} vs {:?}", r.maximal_faces(), engine.maximal_faces());
    }
}
