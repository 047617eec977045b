use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("graph has no bipartition")]
    NoBipartition,
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("order has {order} vertices but graph has {graph}")]
    OrderLength { order: usize, graph: usize },
    #[error("position range {from}..={to} invalid for {n} vertices")]
    PositionRange { from: usize, to: usize, n: usize },
    #[error("layout is not separated")]
    NotSeparated,
    #[error("layout is invalid: {0}")]
    InvalidLayout(String),
    #[error("expected signature {expected}, found ({stacks}, {queues})")]
    WrongSignature {
        expected: String,
        stacks: usize,
        queues: usize,
    },
    #[error("instance has {vertices} vertices, above the solver cap of {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("invalid riffle specification: {0}")]
    InvalidRiffle(String),
    #[error("checkerboard parity violated in cell (column block {col_block}, row block {row_block}): {detail}")]
    ParityViolation {
        col_block: usize,
        row_block: usize,
        detail: String,
    },
    #[error("cell (column block {col_block}, row block {row_block}) is not a single monotone chain")]
    NotADiagonal { col_block: usize, row_block: usize },
    #[error("sides have different sizes ({a} vs {b}); enable padding")]
    UnbalancedSides { a: usize, b: usize },
    #[error("oracle failed: {0}")]
    Oracle(String),
    #[error("no stack page to reroute; use the layout as-is")]
    NothingToReroute,
    #[error("invalid minor map: {0}")]
    InvalidMinorMap(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid tree layout: {0}")]
    InvalidTreeLayout(String),
    #[error("invalid node order: {0}")]
    InvalidNodeOrder(String),
    #[error("invalid subdivision record: {0}")]
    InvalidRecord(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
