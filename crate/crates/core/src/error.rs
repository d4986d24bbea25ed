use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("ambient mismatch: B_({0},{1}) vs B_({2},{3})")]
    AmbientMismatch(usize, usize, usize, usize),

    #[error("size bound exceeded: {what} = {value} > {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("idempotent unavailable: {0}")]
    IdempotentUnavailable(String),

    #[error("invalid cell label: {0}")]
    InvalidLabel(String),

    #[error("permutation does not preserve the wall: {0:?}")]
    WallCrossing(Vec<usize>),

    #[error("invalid permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("not balanced: {0}")]
    NotBalanced(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
