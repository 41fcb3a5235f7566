use thiserror::Error;

use crate::ring::RingKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingKind, right: RingKind },

    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for {n_vars} variables")]
    VariableOutOfRange { index: usize, n_vars: usize },

    #[error("division is not exact")]
    NonExactDivision,

    #[error("coefficient has a pole at q = {q0}")]
    PoleAtQ0 { q0: String },

    #[error("input is not symmetric in the operator's variables")]
    NotSymmetric,

    #[error("parameter order violated: {0}")]
    ParamOrder(String),

    #[error("matrix is singular")]
    Singular,

    #[error("linear system is inconsistent")]
    Infeasible,

    #[error("permutation image leaves the kernel span")]
    Inconsistent,

    #[error("non-integral multiplicity {value} for {partition}")]
    NonIntegralMultiplicity { partition: String, value: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
