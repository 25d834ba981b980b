use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("index {index} out of range for ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has no real roots")]
    NoRealRoots,
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error("graph is disconnected: vertex {unreachable} is not reachable from component {component:?}")]
    Disconnected {
        component: Vec<usize>,
        unreachable: usize,
    },
    #[error("graph is not simple: {0}")]
    NotSimple(String),
    #[error("graph is not a tree")]
    NotATree,
    #[error("{what} is capped at {limit}, got {got}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not a graph blowup-polynomial")]
    NotGraphPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A violated metric axiom, with the offending indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("a metric space needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("distance matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("distance matrix is asymmetric at ({i},{j})")]
    Asymmetric { i: usize, j: usize },
    #[error("nonzero diagonal entry at point {0}")]
    NonzeroDiagonal(usize),
    #[error("nonpositive distance between points {i} and {j}")]
    NonPositive { i: usize, j: usize },
    #[error("triangle inequality violated: d({i},{j}) > d({i},{via}) + d({via},{j})")]
    Triangle { i: usize, j: usize, via: usize },
}
