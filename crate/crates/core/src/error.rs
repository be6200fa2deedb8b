use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Model or root-system parameters violate a precondition.
    InvalidParameter(String),
    /// A sine denominator vanished where a finite value was required.
    SingularValue(String),
    /// A lattice index lies outside the dominant cone it must belong to.
    InvalidIndex(String),
    /// An input vector fails a structural requirement (e.g. not in the
    /// zero-sum hyperplane).
    InvalidInput(String),
    /// A joint eigenspace failed to be one-dimensional.
    Degeneracy(String),
    /// A least-squares fit did not reach the required residual.
    IllConditioned(String),
    /// Matrix or vector dimensions do not match.
    DimensionMismatch { expected: usize, got: usize },
    /// A phase point lies outside the admissible configuration region.
    OutsideConfiguration(String),
    /// A numerically verified identity failed beyond tolerance.
    Diagnostic(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::SingularValue(m) => write!(f, "singular value: {m}"),
            Error::InvalidIndex(m) => write!(f, "invalid lattice index: {m}"),
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Degeneracy(m) => write!(f, "degenerate joint eigenspace: {m}"),
            Error::IllConditioned(m) => write!(f, "ill-conditioned sampling: {m}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::OutsideConfiguration(m) => write!(f, "outside configuration space: {m}"),
            Error::Diagnostic(m) => write!(f, "diagnostic failure: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
