//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by parsing, validation and the computational pipeline.
///
/// Vertex indices in messages are 1-based, matching the external formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid quiver: {0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("vertex index {0} out of range 1..={1}")]
    Index(usize, usize),
    #[error("enumeration budget of {budget} elements exceeded")]
    BudgetExceeded { budget: usize },
    #[error("value at vertex {0} lies outside the semiclosed upper half plane")]
    NotAStabilityFunction(usize),
    #[error("zero central charge value for a class expected to be nonzero")]
    ZeroCharge,
    #[error("zero vector has no norm direction")]
    ZeroVector,
    #[error("dimension vector exceeds the working bound {cap}")]
    BoundExceeded { cap: usize },
    #[error("vector is not componentwise below the ambient dimension vector")]
    NotBelow,
    #[error("no semistable classes at this bound")]
    EmptySet,
    #[error("rotation factor is not a unit")]
    NotUnit,
    #[error("cone kind is inconsistent with the enumerated imaginary roots: {0}")]
    InconsistentType(String),
    #[error("occupied phases leave no free arc: {0}")]
    NoGap(String),
    #[error("window classes do not yield a unimodular basis: {0}")]
    NotABasis(String),
    #[error("window produced {got} minimal generators for rank {rank}")]
    WindowOverflow { got: usize, rank: usize },
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("tilted class is not plus or minus a real root: {0}")]
    NotARootResult(String),
    #[error("hom/ext vanishing digraph has a cycle; no exceptional order exists")]
    NoAdmissibleOrder,
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotABasis(_) | Error::WindowOverflow { .. } => 2,
            Error::BudgetExceeded { .. } | Error::BoundExceeded { .. } => 3,
            _ => 1,
        }
    }
}
