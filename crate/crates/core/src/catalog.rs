//! Irreducible-triangulation catalogs, enumeration by vertex splits, and the table store of
//! exact small-case shifts.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_form, CanonicalForm};
use crate::critical::{critical_regions, find_reducible_critical_region, RegionSearch};
use crate::engine::{shift_complex, EngineConfig};
use crate::error::{Error, Result};
use crate::io::parse_tri;
use crate::lex::{self, lex_prefix};
use crate::region::VertexClass;
use crate::result::{Certification, ShiftResult};
use crate::surface::{SurfaceTriangulation, Topology};
use crate::surface_shift::{classify_maximal_faces, MaximalFaceClass, SmallCases};

const TORUS_IRREDUCIBLE: &str = include_str!("../data/torus_irreducible.tri");
const RP2_IRREDUCIBLE: &str = include_str!("../data/rp2_irreducible.tri");
const KLEIN_IRREDUCIBLE: &str = include_str!("../data/klein_irreducible.tri");

/// A catalogued triangulation with its canonical form and, once computed, its shift.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub surface: Topology,
    pub triangulation: SurfaceTriangulation,
    pub canonical: CanonicalForm,
    pub shifting: Option<ShiftResult>,
}

impl CatalogEntry {
    pub fn new(name: String, triangulation: SurfaceTriangulation) -> Self {
        let canonical = canonical_form(&triangulation);
        Self { name, surface: triangulation.topology(), triangulation, canonical, shifting: None }
    }

    pub fn n(&self) -> usize {
        self.triangulation.n()
    }
}

/// Short name of a surface for file and entry names.
pub fn surface_slug(t: Topology) -> &'static str {
    match t {
        Topology::Sphere => "sphere",
        Topology::Torus => "torus",
        Topology::ProjectivePlane => "rp2",
        Topology::KleinBottle => "klein",
        Topology::Other { .. } => "other",
    }
}

/// Parses and validates a catalog. Entries of a file declared irreducible must have no
/// contractible edge, and a projective-plane list of irreducibles has exactly the two
/// entries on 6 and 7 vertices.
pub fn parse_catalog(surface: Topology, text: &str, declared_irreducible: bool) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (i, entry) in parse_tri(text)?.into_iter().enumerate() {
        let name = entry.name.clone().unwrap_or_else(|| format!("{}-entry-{}", surface_slug(surface), i + 1));
        let k = SurfaceTriangulation::new(entry.complex()?)
            .map_err(|e| Error::Catalog(format!("{name} (line {}): {e}", entry.line)))?;
        if k.topology() != surface {
            return Err(Error::Catalog(format!("{name}: expected {surface}, found {}", k.topology())));
        }
        if declared_irreducible {
            if let Some([a, b]) = k.contractible_edges().first() {
                return Err(Error::Catalog(format!("{name}: declared irreducible but ({a},{b}) is contractible")));
            }
        }
        out.push(CatalogEntry::new(name, k));
    }
    if declared_irreducible && surface == Topology::ProjectivePlane {
        let mut sizes: Vec<usize> = out.iter().map(CatalogEntry::n).collect();
        sizes.sort_unstable();
        if sizes != [6, 7] {
            return Err(Error::Catalog(format!("projective plane irreducibles must have 6 and 7 vertices, found {sizes:?}")));
        }
    }
    Ok(out)
}

pub fn load_catalog(surface: Topology, path: &Path, declared_irreducible: bool) -> Result<Vec<CatalogEntry>> {
    parse_catalog(surface, &fs::read_to_string(path)?, declared_irreducible)
}

/// The irreducible triangulations shipped with the crate.
pub fn shipped_irreducibles(surface: Topology) -> Result<Vec<CatalogEntry>> {
    let text = match surface {
        Topology::Torus => TORUS_IRREDUCIBLE,
        Topology::ProjectivePlane => RP2_IRREDUCIBLE,
        Topology::KleinBottle => KLEIN_IRREDUCIBLE,
        other => return Err(Error::Catalog(format!("no shipped catalog for the {other}"))),
    };
    parse_catalog(surface, text, true)
}

/// Breadth-first closure under vertex splits, one triangulation per isomorphism class,
/// each rebuilt in its canonical labeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub surface: Topology,
    /// Canonical forms per vertex count.
    pub levels: BTreeMap<usize, BTreeSet<CanonicalForm>>,
    /// Every level up to and including this one is closed under splits from below.
    pub complete_through: usize,
}

impl Enumeration {
    pub fn from_seeds(surface: Topology, seeds: &[CatalogEntry]) -> Self {
        let mut levels: BTreeMap<usize, BTreeSet<CanonicalForm>> = BTreeMap::new();
        for s in seeds {
            levels.entry(s.n()).or_default().insert(s.canonical.clone());
        }
        let complete_through = levels.keys().next().copied().unwrap_or(0);
        Self { surface, levels, complete_through }
    }

    /// Fills in level `complete_through + 1` from the splits of the level below.
    /// `keep` filters the new classes (rejection filtering on the final level).
    pub fn extend_level(&mut self, keep: &dyn Fn(&SurfaceTriangulation) -> bool) -> Result<()> {
        let n = self.complete_through;
        let below: Vec<CanonicalForm> = self.levels.get(&n).map(|l| l.iter().cloned().collect()).unwrap_or_default();
        let mut found: BTreeMap<CanonicalForm, SurfaceTriangulation> = BTreeMap::new();
        for code in &below {
            let k = SurfaceTriangulation::from_triangles(&code.triangles())?;
            for param in k.split_parameters() {
                let split = k.split_by_parameter(param);
                found.entry(canonical_form(&split)).or_insert(split);
            }
        }
        let mut next = self.levels.remove(&(n + 1)).unwrap_or_default();
        next.extend(found.into_iter().filter(|(_, k)| keep(k)).map(|(c, _)| c));
        self.levels.insert(n + 1, next);
        self.complete_through = n + 1;
        Ok(())
    }

    pub fn save_checkpoint(&self, path: &Path) -> Result<()> {
        fs::write(path, serde_json::to_string(self)?)?;
        Ok(())
    }

    pub fn load_checkpoint(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    /// All classes as entries, ordered by vertex count and canonical form.
    pub fn entries(&self) -> Result<Vec<CatalogEntry>> {
        let slug = surface_slug(self.surface);
        let mut out = Vec::new();
        for (&n, level) in &self.levels {
            for (i, code) in level.iter().enumerate() {
                let k = SurfaceTriangulation::from_triangles(&code.triangles())?;
                out.push(CatalogEntry {
                    name: format!("{slug}-{n}-{}", i + 1),
                    surface: self.surface,
                    triangulation: k,
                    canonical: code.clone(),
                    shifting: None,
                });
            }
        }
        Ok(out)
    }
}

/// Every triangulation with at most `max_n` vertices reachable from `seeds` by splits.
/// With irreducible seeds of the surface this is every triangulation of it.
pub fn enumerate_by_splits(seeds: &[CatalogEntry], max_n: usize) -> Result<Vec<CatalogEntry>> {
    let Some(surface) = seeds.first().map(|s| s.surface) else {
        return Ok(Vec::new());
    };
    enumerate_with(surface, seeds, max_n, None, &|_| true)
}

/// Split enumeration with an optional checkpoint file, resumed when present and rewritten
/// after each level, and a filter applied to the classes of the last level.
pub fn enumerate_with(
    surface: Topology,
    seeds: &[CatalogEntry],
    max_n: usize,
    checkpoint: Option<&Path>,
    keep_last: &dyn Fn(&SurfaceTriangulation) -> bool,
) -> Result<Vec<CatalogEntry>> {
    let mut en = match checkpoint {
        Some(path) if path.exists() => Enumeration::load_checkpoint(path)?,
        _ => Enumeration::from_seeds(surface, seeds),
    };
    if en.surface != surface {
        return Err(Error::Catalog(format!("checkpoint is for the {}, not the {surface}", en.surface)));
    }
    while en.complete_through < max_n {
        let last = en.complete_through + 1 == max_n;
        en.extend_level(if last { keep_last } else { &|_| true })?;
        if let Some(path) = checkpoint {
            en.save_checkpoint(path)?;
        }
    }
    en.levels.retain(|&n, _| n <= max_n);
    en.entries()
}

/// Exact shifts keyed by canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableStore {
    pub results: BTreeMap<CanonicalForm, ShiftResult>,
}

impl TableStore {
    pub fn get(&self, code: &CanonicalForm) -> Option<&ShiftResult> {
        self.results.get(code)
    }

    pub fn len(&self) -> usize {
        self.results.len()
    }

    pub fn is_empty(&self) -> bool {
        self.results.is_empty()
    }

    fn surface_dir(dir: &Path, surface: Topology) -> PathBuf {
        dir.join(surface_slug(surface))
    }

    /// Writes `<dir>/<surface>/index.json` and one result file per entry.
    pub fn save(&self, dir: &Path, surface: Topology) -> Result<()> {
        let root = Self::surface_dir(dir, surface);
        fs::create_dir_all(root.join("results"))?;
        let mut index = BTreeMap::new();
        for (code, result) in &self.results {
            let rel = format!("results/{}.json", code.to_hex());
            fs::write(root.join(&rel), serde_json::to_string_pretty(result)?)?;
            index.insert(code.to_hex(), rel);
        }
        fs::write(root.join("index.json"), serde_json::to_string_pretty(&index)?)?;
        Ok(())
    }

    pub fn load(dir: &Path, surface: Topology) -> Result<Self> {
        let root = Self::surface_dir(dir, surface);
        let index: BTreeMap<String, String> = serde_json::from_str(&fs::read_to_string(root.join("index.json"))?)?;
        let mut results = BTreeMap::new();
        for (hex, rel) in index {
            let code = CanonicalForm::from_hex(&hex).ok_or_else(|| Error::Catalog(format!("bad canonical code {hex}")))?;
            let result: ShiftResult = serde_json::from_str(&fs::read_to_string(root.join(rel))?)?;
            results.insert(code, result);
        }
        Ok(Self { results })
    }
}

impl SmallCases for TableStore {
    fn lookup(&self, k: &SurfaceTriangulation) -> Option<ShiftResult> {
        self.get(&canonical_form(k)).cloned()
    }
}

/// Shifts every entry with the engine. A dimension on which the confirming seeds disagree
/// aborts the build.
pub fn build_tables(entries: &mut [CatalogEntry], config: &EngineConfig) -> Result<TableStore> {
    let mut store = TableStore::default();
    for entry in entries.iter_mut() {
        let result = shift_complex(entry.triangulation.complex(), config)?;
        if let Some(d) = result
            .certified_by_dim
            .iter()
            .position(|c| matches!(c, Certification::MonteCarlo(k) if *k < config.confirm_seeds))
        {
            return Err(Error::SeedDisagreement(format!("{} in dimension {d}", entry.name)));
        }
        store.results.insert(entry.canonical.clone(), result.clone());
        entry.shifting = Some(result);
    }
    Ok(store)
}

/// A shifted family that is not certified by its lex shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonPrefixCase {
    pub name: String,
    pub n: usize,
    pub class: Option<MaximalFaceClass>,
    pub has_56: bool,
    pub critically_irreducible: bool,
}

/// Summary facts over a built table, with every violated expectation listed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFacts {
    pub entries: usize,
    pub classes: BTreeMap<String, usize>,
    /// Critically irreducible entries at or above the large-case size, all with edges
    /// through `(4,10)`.
    pub large_prefix_checked: usize,
    /// Entries whose result needed the multi-seed protocol in some dimension.
    pub non_prefix: Vec<NonPrefixCase>,
    pub violations: Vec<String>,
}

/// Checks a built table against the classification and the small-case facts the surface
/// algorithms rely on.
pub fn table_facts(entries: &[CatalogEntry]) -> TableFacts {
    let mut facts = TableFacts { entries: entries.len(), ..TableFacts::default() };
    for e in entries {
        let Some(r) = &e.shifting else {
            facts.violations.push(format!("{}: no shift computed", e.name));
            continue;
        };
        let n = e.n();
        let class = classify_maximal_faces(r, e.surface);
        let label = class.map_or_else(|| "outside".to_string(), |c| c.to_string());
        *facts.classes.entry(label).or_default() += 1;
        if class.is_none() {
            facts.violations.push(format!("{}: maximal faces {:?} outside the classification", e.name, r.maximal_faces()));
        }
        if !r.contains(&[1, 3, n as u32]) {
            facts.violations.push(format!("{}: (1,3,{n}) missing", e.name));
        }
        let critically_irreducible = || find_reducible_critical_region(&e.triangulation).is_none();
        let has_56 = r.contains(&[5, 6]);
        let edges_large = r.faces(1) == lex_prefix(n, &[4, 10]).as_slice();
        match e.surface {
            Topology::Torus => {
                if n >= 8 && e.triangulation.is_prime() {
                    let mut expect = lex_prefix(n, &[1, 4, 8]);
                    expect.push(vec![2, 3, 4]);
                    expect.sort();
                    if r.faces(2) != expect.as_slice() {
                        facts.violations.push(format!("{}: prime with {n} vertices but triangles are not through (1,4,8)", e.name));
                    }
                }
                if n >= crate::surface_shift::TORUS_LARGE && critically_irreducible() {
                    facts.large_prefix_checked += 1;
                    if !edges_large {
                        facts.violations.push(format!("{}: critically irreducible on {n} vertices without edges through (4,10)", e.name));
                    }
                }
            }
            Topology::ProjectivePlane if e.triangulation.is_prime() => {
                let top: &[u32] = if n >= 7 { &[1, 4, 7] } else { &[1, 5, 6] };
                if !lex::is_lex_prefix(r.faces(2), n) || r.faces(2).last().map(Vec::as_slice) != Some(top) {
                    facts.violations.push(format!("{}: prime but triangles are not the prefix through {top:?}", e.name));
                }
            }
            Topology::KleinBottle => {
                if r.contains(&[1, 5, 7]) {
                    facts.violations.push(format!("{}: (1,5,7) present", e.name));
                }
                if n >= crate::surface_shift::KLEIN_LARGE && critically_irreducible() {
                    facts.large_prefix_checked += 1;
                    if !edges_large {
                        facts.violations.push(format!("{}: critically irreducible on {n} vertices without edges through (4,10)", e.name));
                    }
                }
            }
            _ => {}
        }
        if !r.is_exact() {
            let ci = critically_irreducible();
            if e.surface == Topology::Torus && ci {
                if let Some(v) = maximal_region_overlap(&e.triangulation) {
                    facts.violations.push(format!("{}: boundary vertex {v} of a maximal critical disk is internal to another", e.name));
                }
                if n < crate::surface_shift::TORUS_LARGE && !(n == 10 && has_56) {
                    facts.violations.push(format!("{}: non-prefix edges on {n} vertices, (5,6) present: {has_56}", e.name));
                }
            }
            facts.non_prefix.push(NonPrefixCase { name: e.name.clone(), n, class, has_56, critically_irreducible: ci });
        }
    }
    let exceptional = facts
        .non_prefix
        .iter()
        .filter(|c| c.critically_irreducible && c.n < crate::surface_shift::TORUS_LARGE)
        .count();
    if entries.first().is_some_and(|e| e.surface == Topology::Torus) && exceptional >= TORUS_EXCEPTIONAL_BOUND {
        facts.violations.push(format!("{exceptional} critically irreducible non-prefix tori, expected fewer than {TORUS_EXCEPTIONAL_BOUND}"));
    }
    facts
}

/// Critically irreducible tori below the large-case size whose shift is not a prefix are rarer than this.
pub const TORUS_EXCEPTIONAL_BOUND: usize = 40;

/// A boundary vertex of an inclusion-maximal critical disk (among those cut out by loops
/// of length at most six) that is internal to another such disk.
fn maximal_region_overlap(k: &SurfaceTriangulation) -> Option<u32> {
    let regions = critical_regions(k, RegionSearch::DISKS);
    let tri_sets: Vec<BTreeSet<[u32; 3]>> = regions.iter().map(|r| r.region.triangles().iter().copied().collect()).collect();
    for (i, r) in regions.iter().enumerate() {
        let maximal = tri_sets.iter().enumerate().all(|(j, s)| j == i || !(tri_sets[i].is_subset(s) && tri_sets[i] != *s));
        if !maximal {
            continue;
        }
        for v in r.region.boundary_vertices() {
            let inside_other = regions
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && o.region.vertex_class(v) == Some(VertexClass::Internal));
            if inside_other {
                return Some(v);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_catalogs_validate() {
        let rp2 = shipped_irreducibles(Topology::ProjectivePlane).unwrap();
        assert_eq!(rp2.iter().map(CatalogEntry::n).collect::<Vec<_>>(), vec![6, 7]);
        assert_ne!(rp2[0].canonical, rp2[1].canonical);
        for surface in [Topology::Torus, Topology::KleinBottle] {
            let entries = shipped_irreducibles(surface).unwrap();
            let codes: BTreeSet<_> = entries.iter().map(|e| e.canonical.clone()).collect();
            assert_eq!(codes.len(), entries.len());
            assert!(entries.iter().all(|e| e.triangulation.is_irreducible()));
        }
    }

    #[test]
    fn rejects_bad_catalogs() {
        let octahedron = "1 3 5\n1 3 6\n1 4 5\n1 4 6\n2 3 5\n2 3 6\n2 4 5\n2 4 6\n";
        assert!(parse_catalog(Topology::Torus, octahedron, false).is_err());
        assert!(parse_catalog(Topology::Sphere, octahedron, true).is_err());
        assert!(parse_catalog(Topology::Sphere, octahedron, false).is_ok());
        let one_rp2 = crate::io::write_tri([(None, crate::standard::rp2_6().triangles())]);
        assert!(parse_catalog(Topology::ProjectivePlane, &one_rp2, true).is_err());
    }

    #[test]
    fn enumeration_is_idempotent_and_resumable() {
        let seeds = shipped_irreducibles(Topology::ProjectivePlane).unwrap();
        let once = enumerate_by_splits(&seeds, 8).unwrap();
        let twice = enumerate_by_splits(&seeds, 8).unwrap();
        let codes = |v: &[CatalogEntry]| v.iter().map(|e| e.canonical.clone()).collect::<Vec<_>>();
        assert_eq!(codes(&once), codes(&twice));
        let dir = tempfile::tempdir().unwrap();
        let ck = dir.path().join("frontier.json");
        enumerate_with(Topology::ProjectivePlane, &seeds, 7, Some(&ck), &|_| true).unwrap();
        let resumed = enumerate_with(Topology::ProjectivePlane, &seeds, 8, Some(&ck), &|_| true).unwrap();
        assert_eq!(codes(&resumed), codes(&once));
    }

    #[test]
    fn table_store_round_trip() {
        let mut entries = shipped_irreducibles(Topology::ProjectivePlane).unwrap();
        let store = build_tables(&mut entries, &EngineConfig::default()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        store.save(dir.path(), Topology::ProjectivePlane).unwrap();
        let back = TableStore::load(dir.path(), Topology::ProjectivePlane).unwrap();
        assert_eq!(back, store);
        assert!(back.lookup(&crate::standard::rp2_6()).is_some());
        let facts = table_facts(&entries);
        assert!(facts.violations.is_empty(), "{:?}", facts.violations);
    }
}
