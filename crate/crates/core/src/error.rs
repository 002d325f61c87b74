use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a denominator factor vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("denominator has zero constant term")]
    PoleAtOrigin,
    #[error("polynomial is not divisible by the linear form")]
    NotDivisible,
    #[error("max_arcs = {max_arcs} is too small for a tree on {n} vertices")]
    BoundTooSmall { n: usize, max_arcs: usize },
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
