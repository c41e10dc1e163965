use thiserror::Error;

use crate::surface::Topology;

/// Errors raised by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty face in input")]
    EmptyFace,
    #[error("vertex label must be positive, found {0}")]
    NonPositiveLabel(i64),
    #[error("duplicate vertex {vertex} within face {face:?}")]
    DuplicateVertex { vertex: u32, face: Vec<u32> },
    #[error("complex has no faces")]
    EmptyComplex,
    #[error("not a closed surface: {0}")]
    NotClosedSurface(String),
    #[error("edge ({0}, {1}) is not in the complex")]
    EdgeAbsent(u32, u32),
    #[error("edge ({0}, {1}) lies in a missing triangle and cannot be contracted")]
    NotContractible(u32, u32),
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("invalid vertex split: {0}")]
    InvalidSplit(String),
    #[error("not a simple cycle of the 1-skeleton: {0}")]
    NotACycle(String),
    #[error("modulus {0} is not an odd prime")]
    BadModulus(u64),
    #[error("dimension {requested} exceeds complex dimension {dim}")]
    DimensionTooLarge { requested: usize, dim: usize },
    #[error("specialization with seed {seed} is degenerate in dimension {dim}")]
    DegenerateSpecialization { seed: u64, dim: usize },
    #[error("parameter order violated: need n >= k >= d >= 1, got n={n}, k={k}, d={d}")]
    ParameterOrder { n: usize, k: usize, d: usize },
    #[error("corank {corank} differs from tail size {tail} (d={d}, k={k}) after a seed retry")]
    CorankMismatch { d: usize, k: usize, corank: usize, tail: usize },
    #[error("specialization has size {spec} but the complex needs {needed}")]
    SpecializationSize { spec: usize, needed: usize },
    #[error("triangles do not form a surface-embeddable region: {0}")]
    NotARegion(String),
    #[error("region shape {0} is outside the combinatorially characterized classes")]
    UncharacterizedShape(String),
    #[error("expected a {expected} triangulation, found {found}")]
    UnsupportedTopology { expected: Topology, found: Topology },
    #[error("inconsistent edge budget: {0}")]
    EdgeBudget(String),
    #[error("theorem contract violated: {0}")]
    TheoremContract(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error("results disagree across seeds: {0}")]
    SeedDisagreement(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
