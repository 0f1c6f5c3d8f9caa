//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field of size {p}^{degree} exceeds the 2^48 element limit")]
    FieldTooLarge { p: u64, degree: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition `{name}` violated: {detail}")]
    Precondition { name: &'static str, detail: String },
    #[error("guard `{guard}` exceeded: {required} > {limit}")]
    GuardExceeded {
        guard: &'static str,
        required: u128,
        limit: u128,
    },
    #[error("objects are defined over different field towers")]
    TowerMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("independent computations disagree: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(name: &'static str, detail: impl Into<String>) -> Error {
    Error::Precondition {
        name,
        detail: detail.into(),
    }
}
