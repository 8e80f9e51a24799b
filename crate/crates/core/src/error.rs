use thiserror::Error;

use crate::diagram::Violation;

/// Everything that can go wrong inside the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("orienting monomial does not cover the diagram generators exactly once: {0}")]
    TokenMismatch(String),
    #[error("invalid diagram {diagram}: {violations:?}")]
    InvalidDiagram {
        diagram: String,
        violations: Vec<Violation>,
    },
    #[error("permutation and degree list lengths differ ({perm} vs {degrees})")]
    LengthMismatch { perm: usize, degrees: usize },
    #[error("matrix shape does not match the complex: {0}")]
    DimensionMismatch(String),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("Arnold rewriting exceeded its termination bound on {0}")]
    NonTermination(String),
    #[error("a field is required (got the integers)")]
    FieldRequired,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("differential leaves the subcomplex {variant} at (i={i}, j={j})")]
    ClosureViolation { variant: String, i: usize, j: usize },
    #[error("argument is not homogeneous in total degree")]
    NonHomogeneous,
    #[error("divided powers need an even-degree element outside characteristic 2")]
    OddDegree,
    #[error("bracket expects {expected} factors, diagram has {actual} points")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("bracket target must not carry top asterisks")]
    TopAsterisksOnD,
    #[error("argument not supported on the expected complex: {0}")]
    VariantMismatch(String),
    #[error("{map} is not a chain map at (i={i}, j={j})")]
    NotAChainMap { map: String, i: usize, j: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
