use thiserror::Error;

/// Errors produced by the qube toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} is outside the supported range 1..=24")]
    DimensionOutOfRange(usize),
    #[error("entry index {index} is out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("vertex {value} does not fit in {n} bits")]
    VertexOutOfRange { value: u64, n: usize },
    #[error("expected {expected} vertices, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("vertex {vertex} appears twice (second time at index {index})")]
    DuplicateVertex { vertex: u32, index: usize },
    #[error("step {index} -> {next} is not a hypercube edge")]
    NonAdjacentStep { index: usize, next: usize },
    #[error("last vertex is not adjacent to the first one")]
    NotClosed,
    #[error("invalid permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("dimension {0} carries no edge of the cycle")]
    DimensionUnused(usize),
    #[error("edges share vertex {0}: not a matching")]
    NotAMatching(u32),
    #[error("equi-independence number of Q_{0} is not available")]
    EquiValueUnavailable(usize),
    #[error("graph has {vertices} vertices, limit is {limit}")]
    SizeLimitExceeded { vertices: usize, limit: usize },
    #[error("graph is not bipartite: edge {0}-{1} lies inside a class")]
    NotBipartite(usize, usize),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
