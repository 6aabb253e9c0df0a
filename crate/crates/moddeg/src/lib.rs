//! Exact polynomial representations of Boolean functions over `Z` and `Z_m`.
//!
//! The crate computes the unique multilinear polynomial of a Boolean function,
//! its degree modulo arbitrary integers, Mahler expansions of symmetric
//! functions, and the binomial coefficient matrices that govern weight-modular
//! functions. On top of that sit exhaustive verification suites for the known
//! degree lower bounds at small input sizes, and a construction pipeline that
//! produces symmetric functions of provably low composite-modulus degree from
//! simultaneous Diophantine approximations.
//!
//! All arithmetic that feeds a verdict is exact: machine integers where bounds
//! are known, arbitrary precision elsewhere. Floating point appears only as a
//! search prefilter and never decides anything.

pub mod boolfn;
pub mod extremal;
pub mod mahler;
pub mod polyrep;
pub mod report;
pub mod zmod;

/// Crate-wide error type. Mathematical impossibilities (a falsified identity
/// or a missing guaranteed witness) surface as [`Error::CheckFailed`] so that
/// callers can distinguish them from plain misuse.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("cannot factorize 0")]
    FactorizeZero,
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("size {value} exceeds the supported cap {cap}")]
    CapExceeded { value: u64, cap: u64 },
    #[error("invalid restriction: {0}")]
    BadRestriction(String),
    #[error("invalid parameter: {0}")]
    BadParameter(String),
    #[error("function must be non-degenerate")]
    Degenerate,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal cross-check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
