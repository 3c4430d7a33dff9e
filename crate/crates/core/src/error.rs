use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("not an involution: {0}")]
    NotAnInvolution(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("length {n} exceeds the configured cap {cap} for {what}")]
    ResourceLimit { what: &'static str, n: usize, cap: usize },
    #[error("fixed-point tables are only defined for involution queries")]
    NotInvolutionQuery,
    #[error("series has a non-unit constant term")]
    NonUnitConstant,
    #[error("closed form has a nonzero coefficient at x^{exponent}")]
    NegativeValuation { exponent: i64 },
    #[error("input contains the pattern 132")]
    NotAvoiding,
    #[error("word is not a primitive Dyck word")]
    NotPrimitive,
    #[error("input is empty")]
    EmptyInput,
    #[error("input contains 132 {found} times, expected exactly once")]
    WrongOccurrenceCount { found: u64 },
    #[error("involution has no fixed point")]
    NoFixedPoint,
    #[error("input is outside the class: {0}")]
    NotInClass(String),
}

pub type Result<T> = std::result::Result<T, Error>;
