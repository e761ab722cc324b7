use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid model parameters (p={p}, p'={pp}): {reason}")]
    InvalidParams { p: i64, pp: i64, reason: String },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("q-trinomial indices {a}+{b}+{c} do not sum to {n}")]
    TrinomialSum { n: i64, a: i64, b: i64, c: i64 },

    #[error("({a},{b},{c}) is not a valid triple of consecutive path steps for p'={pp}")]
    InvalidTriple { a: i64, b: i64, c: i64, pp: i64 },

    #[error("invalid path {steps:?}: {reason}")]
    InvalidPath { steps: Vec<i64>, reason: String },

    #[error("tau table for (p,p')=({p},{pp}) violates: {violations:?}")]
    TauInvariant {
        p: i64,
        pp: i64,
        violations: Vec<String>,
    },

    #[error("boundary b={b} is not b(r={r}, a={a})={expected}")]
    BoundaryMismatch { r: i64, a: i64, b: i64, expected: i64 },

    #[error("Delta({r},{b}) has two minimizers over s = {a} mod 2")]
    BoundaryTie { r: i64, a: i64, b: i64 },

    #[error("operation needs an exact (untruncated) series")]
    NeedsExact,

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
