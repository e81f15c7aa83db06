use thiserror::Error;

use crate::theory::Rejection;

/// Errors produced by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SctError {
    #[error("{m} does not divide {n}")]
    InvalidDivisor { n: u32, m: u32 },

    #[error("invalid unit subgroup of Z_{n}: {reason}")]
    InvalidSubgroup { n: u32, reason: String },

    #[error("malformed partition of Z_{n}: {reason}")]
    MalformedPartition { n: u32, reason: String },

    #[error("order {n} exceeds the supported maximum of {max}")]
    TooLarge { n: u32, max: u32 },

    #[error("not a supercharacter theory: {0}")]
    NotATheory(Rejection),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("incompatible groups: Z_{left} vs Z_{right}")]
    IncompatibleGroups { left: u32, right: u32 },

    #[error("subgroup of order {order} is not a union of superclasses")]
    NotNormal { order: u32 },

    #[error("orders {a} and {b} are not coprime")]
    NotCoprime { a: u32, b: u32 },

    #[error("resource limit reached for n = {n} after {nodes} search nodes")]
    ResourceLimit { n: u32, nodes: u64 },

    #[error("theory set for n = {n} is incomplete: {reason}")]
    IncompleteSet { n: u32, reason: String },

    #[error("empty interval: element {lower} is not below element {upper}")]
    EmptyInterval { lower: usize, upper: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, SctError>;
