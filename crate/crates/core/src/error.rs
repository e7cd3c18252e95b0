use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("edge `{0}` cannot be split into zero parts")]
    ZeroParts(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("edge chain is not a cycle")]
    NotACycle,
    #[error("edges `{0}` and `{1}` share no vertex")]
    NonAdjacentEdges(String, String),
    #[error("exact solve failed: {0}")]
    SolveFailure(String),
    #[error("bad rotation system: {0}")]
    BadRotation(String),
    #[error("rotation system is not planar: traced {traced} faces, Euler predicts {expected}")]
    EulerMismatch { traced: usize, expected: usize },
    #[error("bad outer face marker: {0}")]
    BadOuterMarker(String),
    #[error("graph has no vertex of valence at least 3")]
    NoEssentialVertex,
    #[error("face {0} touches every vertex")]
    NoOffBoundaryVertex(usize),
    #[error("invalid graph file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
