//! Exterior algebraic shifting of simplicial complexes.
//!
//! The generic engine ([`engine`]) computes `Delta(K)` for any complex from a random
//! specialization of the generic matrix over a prime field, with certification. The
//! [`surface_shift`] module computes it deterministically for triangulations of the
//! torus, the projective plane and the Klein bottle by reducing critical regions.

pub mod canonical;
pub mod catalog;
pub mod complex;
pub mod critical;
pub mod engine;
pub mod error;
pub mod field;
pub mod homology;
pub mod io;
pub mod lex;
pub mod region;
pub mod result;
pub mod standard;
pub mod surface;
pub mod surface_shift;

pub use complex::{build_complex, Face, SimplicialComplex};
pub use error::{Error, Result};
pub use field::{PrimeField, MERSENNE_61};
pub use region::{classify_region, EdgeClass, Region, RegionShape, VertexClass};
pub use surface::{classify_surface, Separation, SurfaceTriangulation, Topology};
pub use canonical::{canonical_form, canonical_form_marked, CanonicalForm};
pub use critical::{
    admissible_contraction, combinatorial_critical_check, critical_report, find_reducible_critical_region,
    reduce_to_irreducible, CriticalReport, RegionSearch,
};
pub use engine::{
    certify, exterior_shift, fresh_specialization, psi_corank, region_rows_independent, shift_complex,
    shift_union_over_simplex, EngineConfig, GenericSpecialization,
};
pub use homology::betti_numbers;
pub use lex::tail_lex;
pub use result::{betti_from_shift, Certification, ShiftResult};
pub use surface_shift::{
    classify_maximal_faces, edges_from_tail, klein_rp2_decomposition, shift_klein, shift_rp2, shift_torus,
    MaximalFaceClass, SmallCases, SurfaceShifter, TraceSummary, Verification, verify_surface,
};
pub use catalog::{build_tables, enumerate_by_splits, load_catalog, CatalogEntry, TableStore};
