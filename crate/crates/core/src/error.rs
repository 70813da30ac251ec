use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("shape mismatch: (d={left_degree}, n={left_level}) vs (d={right_degree}, n={right_level})")]
    ShapeMismatch {
        left_degree: usize,
        left_level: usize,
        right_degree: usize,
        right_level: usize,
    },

    #[error("path of length {got} applied to a level-{expected} element")]
    PathLength { expected: usize, got: usize },

    #[error("invalid partial bijection: {0}")]
    InvalidPartialBijection(String),

    #[error("invalid tree element: {0}")]
    InvalidTree(String),

    #[error("{what} too large: {size} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        size: String,
        limit: String,
    },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
