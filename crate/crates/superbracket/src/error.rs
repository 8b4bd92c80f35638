//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generator context mismatch: index {index} used with conflicting parities")]
    ContextMismatch { index: u32 },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("parity inconsistency: entry ({i},{j},{k}) violates the grading")]
    ParityInconsistency { i: usize, j: usize, k: usize },

    #[error("symmetry violation in {table} table at ({i},{j},{k})")]
    SymmetryViolation { table: &'static str, i: usize, j: usize, k: usize },

    #[error("expression references generator {index} but only {arity} are bound")]
    UnboundGenerator { index: usize, arity: usize },

    #[error("arity must be at least {min} for this family, got {got}")]
    ArityTooSmall { min: usize, got: usize },

    #[error("{0} is not supported in this evaluation mode")]
    UnsupportedNode(&'static str),

    #[error("coordinate context mismatch: {0}")]
    CoordinateMismatch(String),

    #[error("operand is not parity-homogeneous; split it into parts first")]
    Inhomogeneous,

    #[error("structure is degenerate: {0}")]
    Degenerate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}
