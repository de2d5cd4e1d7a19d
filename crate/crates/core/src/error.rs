use thiserror::Error;

/// Errors raised by the numerical machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown surface id `{0}`")]
    UnknownSurface(String),
    #[error("divisor has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector is not a root: self-intersection {0}, expected -2")]
    NotARoot(i64),
    #[error("reflection index {index} out of range for {surface} ({count} simple roots)")]
    ReflectionIndex { surface: String, index: usize, count: usize },
    #[error("no exceptional class with rank {r} and c1 {c1:?}: {reason}")]
    NotExceptional { r: i64, c1: Vec<i64>, reason: String },
    #[error("class with rank 0 and degree 0 has no sheaf normalization")]
    DegenerateClass,
    #[error("collection is not numerically exceptional: chi({i},{j}) = {value}")]
    NotExceptionalCollection { i: usize, j: usize, value: i64 },
    #[error("collection contains an object of rank {rank} at position {index}; positive ranks required")]
    NonPositiveRank { index: usize, rank: i64 },
    #[error("collection of length {got} is not full (expected {expected})")]
    NotFull { expected: usize, got: usize },
    #[error("collection is not very strong")]
    NotVeryStrong,
    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("polygon invariant violated: {0}")]
    PolygonInvariant(String),
    #[error("quiver has a loop or 2-cycle at vertex {0}")]
    QuiverCycle(usize),
    #[error("mutation failed: {0}")]
    Mutation(String),
    #[error("infeasible data: {0}")]
    Infeasible(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
