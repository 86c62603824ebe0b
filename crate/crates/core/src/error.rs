use thiserror::Error;

/// Rejections raised while building a [`Graph`](crate::Graph).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) out of range for {vertex_count} vertices")]
    OutOfRange { u: usize, v: usize, vertex_count: usize },
}

/// Errors shared by the algorithms of this crate.
///
/// The three non-graph variants map onto the caller-facing outcomes:
/// bad input, a degree precondition that does not hold for the given graph,
/// and a post-hoc certification that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    /// A balanced split needed a bad vertex in the component containing
    /// `vertex` (its smallest vertex) and the selector allowed none.
    #[error("no allowed bad vertex in the component of vertex {vertex}")]
    SelectorExhausted { vertex: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
