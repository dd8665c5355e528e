use thiserror::Error;

/// Errors raised by graph construction and the combinatorial operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(usize),
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },
    #[error("parallel edges between {0} and {1} are not allowed in a simple graph")]
    MultiEdge(usize, usize),
    #[error("digraph is not Eulerian")]
    NotEulerian,
    #[error("graph is not connected")]
    Disconnected,
    #[error("size cap exceeded: {what} is {actual}, cap is {cap}")]
    SizeCap { what: &'static str, actual: usize, cap: usize },
    #[error("invalid trail: {0}")]
    InvalidTrail(String),
    #[error("trail is not closed")]
    NotClosed,
    #[error("insertion precondition failed: {0}")]
    Insertion(&'static str),
    #[error("ground sets differ ({0} vs {1} elements)")]
    GroundMismatch(usize, usize),
    #[error("invalid set partition: {0}")]
    InvalidPartition(String),
    #[error("relation is not a partial order: {0}")]
    InvalidOrder(String),
    #[error("element is not in the poset")]
    NotInPoset,
    #[error("poset has no rank function")]
    NotRanked,
    #[error("digraph is not an orientation of the host multigraph")]
    NotOrientation,
    #[error("not a partition of the edge set into directed cycles")]
    NotCyclePartition,
    #[error("edge order is not a permutation of the edge ids")]
    InvalidEdgeOrder,
    #[error("edge set is not an NBC base")]
    NotNbcBase,
    #[error("invalid heap: {0}")]
    InvalidHeap(String),
    #[error("heaps share element {0}")]
    OverlappingHeaps(u32),
    #[error("element {0} is not maximal in the heap")]
    NotMaximal(u32),
    #[error("pieces {0} and {1} are not concurrent")]
    NotConcurrent(usize, usize),
    #[error("unknown piece {0}")]
    UnknownPiece(usize),
    #[error("orientation is not acyclic with a unique sink")]
    NotUniqueSink,
    #[error("vertex {0} has odd degree, so the multigraph is not Veblen")]
    NotVeblen(usize),
    #[error("maximum out-degree is {0}; at least 2 is required")]
    DegreeTooSmall(usize),
    #[error("coefficient {0} is not an integer")]
    NonIntegral(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
