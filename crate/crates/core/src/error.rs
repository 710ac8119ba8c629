use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violates a structural invariant; `clause` names it.
    #[error("validation failed ({clause}): {detail}")]
    Validation { clause: &'static str, detail: String },

    #[error("precondition failed ({clause}): {detail}")]
    Precondition { clause: &'static str, detail: String },

    #[error("{what} of size {size} exceeds the cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("invalid label {label} at step {step}: no edge with that label")]
    InvalidLabel { step: usize, label: usize },

    #[error("mismatched rank: {0} vs {1}")]
    MismatchedRank(usize, usize),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn validation(clause: &'static str, detail: impl Into<String>) -> Error {
    Error::Validation { clause, detail: detail.into() }
}

pub(crate) fn precondition(clause: &'static str, detail: impl Into<String>) -> Error {
    Error::Precondition { clause, detail: detail.into() }
}
