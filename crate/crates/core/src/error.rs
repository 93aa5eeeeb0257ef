use thiserror::Error;

/// Errors raised by the library. Most algorithms are total and report
/// failure through `Option` or an outcome struct; these variants cover
/// contract violations by the caller.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph invariant violated: {0}")]
    InvalidGraph(String),

    #[error("{{{0}, {1}}} is not an edge of the host graph")]
    NotAnEdge(usize, usize),

    #[error("probability {0} is not in [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("invalid rotation: {0}")]
    InvalidRotation(String),

    #[error("not a permutation of the vertex set: {0}")]
    InvalidOrder(String),

    #[error("subgraph is not {0}-connected")]
    NotConnectedEnough(usize),

    #[error("empty vertex set: {0}")]
    EmptySet(&'static str),

    #[error("cycles are not vertex-disjoint (shared vertex {0})")]
    CyclesNotDisjoint(usize),

    #[error("only {found} disjoint connecting paths found, need at least {needed}")]
    TooFewPaths { found: usize, needed: usize },

    #[error("instance has {vertex_count} vertices, exact solver limit is {limit}")]
    SizeGuard { vertex_count: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid experiment config: {0}")]
    Config(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
