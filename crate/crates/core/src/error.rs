//! Error type shared by all modules of the crate.
//!
//! Indices are 0-based internally; every message renders them 1-based to
//! match the usual mathematical convention.

use crate::scalar::Scalar;

/// Errors produced by parsing, shape checking and the solvers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A token could not be read as an exact value in `[0, 1]`.
    #[error("cannot parse {token:?} as a value in [0, 1]: {reason}")]
    Parse { token: String, reason: String },

    /// Operand dimensions do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An index points outside the ambient dimension.
    #[error("index {} is out of range for dimension {dim}", index + 1)]
    IndexOutOfRange { index: usize, dim: usize },

    /// A matrix entry violates the `a_ij <= lambda` precondition.
    #[error("matrix entry at row {}, column {} is {value}, which exceeds lambda = {lambda}", row + 1, col + 1)]
    EntryAboveLambda {
        row: usize,
        col: usize,
        value: Scalar,
        lambda: Scalar,
    },

    /// A right-hand side entry violates the `b_i <= lambda` precondition.
    #[error("right-hand side entry {} is {value}, which exceeds lambda = {lambda}", row + 1)]
    RhsAboveLambda {
        row: usize,
        value: Scalar,
        lambda: Scalar,
    },

    /// A vector that was required to satisfy `A x = x` does not.
    #[error("vector is not a principal eigenvector: row {} of Ax differs from x", row + 1)]
    NotPrincipal { row: usize },

    /// Grid enumeration was asked to visit more points than the cap allows.
    #[error("grid enumeration would visit {points} points, exceeding the cap of {cap}")]
    GridTooLarge { points: u128, cap: u128 },
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
