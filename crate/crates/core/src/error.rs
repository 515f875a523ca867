use thiserror::Error;

/// Largest supported graph order: one machine word per vertex set and a
/// single-byte graph6 header.
pub const MAX_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("vertex {vertex} is out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("adjacency is not symmetric between vertices {0} and {1}")]
    Asymmetric(usize, usize),
    #[error("operation requires a graph with at least one vertex")]
    EmptyGraph,
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("graph order {n} exceeds the exhaustive enumeration cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
