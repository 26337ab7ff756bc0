use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("arity mismatch: function takes {expected} arguments, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("vertex {vertex} out of range for a system with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("brute-force enumeration refused: {n} vertices exceeds the cap of {cap}")]
    BruteForceCap { n: usize, cap: usize },

    #[error("minor search refused: pattern has {vertices} vertices (limit {limit})")]
    MinorTooLarge { vertices: usize, limit: usize },

    #[error("minor search refused: host graph has {vertices} vertices (limit {limit})")]
    HostTooLarge { vertices: usize, limit: usize },

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("invalid CSP instance: {0}")]
    InvalidCsp(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),

    #[error("invalid CNF: {0}")]
    InvalidCnf(String),

    #[error("graph is not planar")]
    NonPlanar,
}
