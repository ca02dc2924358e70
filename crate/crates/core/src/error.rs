use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("rank deficient: {0}")]
    Rank(String),

    #[error("norm L{0} is not supported here; the L2 ball is not a polytope (use the empirical estimator instead)")]
    UnsupportedNorm(&'static str),

    #[error("polyhedron is unbounded or empty: {0}")]
    Unbounded(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("residue class {residue} mod {period} has {have} samples, need at least {need}")]
    InsufficientSamples {
        residue: u64,
        period: u64,
        have: usize,
        need: usize,
    },

    #[error(
        "fitted quasipolynomial gives {fitted} at t = {dilate}, but the supplied count is {count}"
    )]
    Inconsistent {
        dilate: u64,
        count: BigInt,
        fitted: String,
    },

    #[error("leading coefficient differs between residue classes ({0})")]
    Constancy(String),

    #[error("Ehrhart fit failed for every candidate period {0:?}")]
    FitFailed(Vec<u64>),
}
