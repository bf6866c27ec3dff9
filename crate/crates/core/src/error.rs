use thiserror::Error;

/// Errors raised by the computation modules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GwError {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("ambient dimension d = {0} is not supported (need d >= 3)")]
    DimensionTooSmall(u32),

    #[error("{what} = {value} is out of range: {bound}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        bound: String,
    },

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("expression is not multilinear: {0}")]
    NotMultilinear(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown relation family `{0}`")]
    UnknownRelation(String),

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("relation data: {0}")]
    RelationData(String),
}

pub type Result<T, E = GwError> = std::result::Result<T, E>;

pub(crate) fn out_of_range(what: &'static str, value: impl Into<i64>, bound: impl Into<String>) -> GwError {
    GwError::OutOfRange {
        what,
        value: value.into(),
        bound: bound.into(),
    }
}
