use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("path is empty")]
    EmptyPath,
    #[error("vertex {0} is not on the path")]
    NotOnPath(usize),
    #[error("value count {values} does not match path length {len}")]
    ValueCount { values: usize, len: usize },
    #[error("structure needs at least two vertices")]
    TooFewVertices,
    #[error("vertex {0} listed more than once")]
    DuplicateVertex(usize),
    #[error("vertex {0} is already inactive")]
    AlreadyInactive(usize),
    #[error("paths overlap at vertex {0}")]
    OverlappingPaths(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} is not present")]
    MissingEdge(usize),
    #[error("vertex {0} is not present")]
    MissingVertex(usize),
    #[error("edge {0} closes a cycle")]
    NotAForest(usize),
    #[error("vertices {0} and {1} lie in different components")]
    DifferentComponents(usize, usize),
    #[error("component holds no separator vertex")]
    Unflagged,
    #[error("component has no neighbour in the segment")]
    NoSegmentNeighbour,
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("invariant violated: {0}")]
    InvariantViolation(&'static str),
}
