use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("block index {index} out of range (design has {count} blocks)")]
    BlockOutOfRange { index: usize, count: usize },

    #[error("point {point} out of range (design has {n} points)")]
    PointOutOfRange { point: usize, n: usize },

    #[error("a pair lookup needs two distinct points, got {0} twice")]
    SamePoint(usize),

    #[error("points {0} and {1} are not joined by any block")]
    PairNotCovered(usize, usize),

    #[error("invalid parameters n={n}, k={k}: {reason}")]
    Parameters { n: usize, k: usize, reason: String },

    #[error("design is not a Steiner 2-design: {0}")]
    Invalid(String),

    #[error("{q} is not a supported prime power")]
    NotPrimePower { q: usize },

    #[error("unsupported order {q} for {what}")]
    UnsupportedOrder { what: &'static str, q: usize },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("coloring is not proper: {0}")]
    ImproperColoring(String),

    #[error("assignment is not a bijection onto the points of the base block: {0}")]
    NotBijective(String),

    #[error("colorings belong to different pencils (base blocks {0} and {1})")]
    PencilMismatch(usize, usize),

    #[error("pencil has {size} members; the brute-force enumerator is limited to {limit}")]
    TooLarge { size: usize, limit: usize },

    #[error("catalog: {0}")]
    Catalog(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
