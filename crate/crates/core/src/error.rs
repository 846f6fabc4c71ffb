use thiserror::Error;

/// Errors raised by the group, character and certification layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("element is not in the group")]
    NotInGroup,

    #[error("subgroup is not contained in the group")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("group is not a {p}-group (order {order})")]
    NotPGroup { p: u64, order: u64 },

    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded { what: &'static str, size: u64, cap: u64 },

    #[error("enumeration incomplete: {0}")]
    Incomplete(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not a genuine character: {0}")]
    NotACharacter(String),

    #[error("class functions live on different groups")]
    GroupMismatch,

    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("unknown or malformed family `{0}`")]
    BadFamily(String),

    #[error("internal defect: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, size: u64, cap: u64) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
