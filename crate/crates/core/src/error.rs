use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// [`Error::kind`] returns the bare variant name; the command-line front end
/// prints it so that scripts can match on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: VertexId },
    #[error("edge {edge} has non-positive weight {weight}")]
    NonPositiveWeight { edge: usize, weight: String },
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("operation requires unit weights, edge {edge} has weight {weight}")]
    NonUnitWeights { edge: usize, weight: String },
    #[error("undirected edge {{{0}, {1}}} appears more than once")]
    DuplicateEdge(VertexId, VertexId),

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("leading block of the Schur complement is singular")]
    SingularBlock,

    #[error("search space of {size} candidates exceeds the cap of {cap}")]
    TooLarge { size: String, cap: String },
    #[error("digraph is not Eulerian")]
    NotEulerian,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("reduced biclique digraph is not strongly connected")]
    ReducedNotStronglyConnected,
    #[error("vertex {0} has zero weighted out-degree")]
    ZeroDegree(VertexId),
    #[error("vertex {0} has out-degree zero")]
    ZeroOutDegree(VertexId),
    #[error("vertex {0} has in-degree zero")]
    InDegreeZero(VertexId),
    #[error("undirected graph is disconnected")]
    Disconnected,

    #[error("biclique {biclique} claims edge {tail}->{head} which the host lacks")]
    NotABiclique { biclique: usize, tail: VertexId, head: VertexId },
    #[error("edge {tail}->{head} is covered {covered} times but occurs {present} times")]
    CoverageGap { tail: VertexId, head: VertexId, covered: usize, present: usize },
    #[error("edge {tail}->{head} is covered {covered} times but occurs {present} times")]
    CoverageOverlap { tail: VertexId, head: VertexId, covered: usize, present: usize },
    #[error("biclique {0} has an empty side")]
    EmptyBiclique(usize),
    #[error("partition has no bicliques")]
    EmptyPartition,
    #[error("edge {edge} weight does not equal the weight of its head vertex")]
    WeightsNotInduced { edge: usize },
    #[error("vertex-weight vector has length {got}, expected {expected}")]
    WeightCount { got: usize, expected: usize },
    #[error("root {0} lies in no biclique head side")]
    RootNotCovered(VertexId),
    #[error("expected a positive integer, got {0}")]
    NonIntegerResult(String),
    #[error("degree hypothesis violated at vertex {0}: need out-degree and in-degree both positive")]
    DegreeHypothesisViolated(VertexId),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Variant name, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SelfLoop { .. } => "SelfLoop",
            Error::NonPositiveWeight { .. } => "NonPositiveWeight",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::NonUnitWeights { .. } => "NonUnitWeights",
            Error::DuplicateEdge(..) => "DuplicateEdge",
            Error::NotSquare { .. } => "NotSquare",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::Singular => "Singular",
            Error::SingularBlock => "SingularBlock",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotEulerian => "NotEulerian",
            Error::NotStronglyConnected => "NotStronglyConnected",
            Error::ReducedNotStronglyConnected => "ReducedNotStronglyConnected",
            Error::ZeroDegree(_) => "ZeroDegree",
            Error::ZeroOutDegree(_) => "ZeroOutDegree",
            Error::InDegreeZero(_) => "InDegreeZero",
            Error::Disconnected => "Disconnected",
            Error::NotABiclique { .. } => "NotABiclique",
            Error::CoverageGap { .. } => "CoverageGap",
            Error::CoverageOverlap { .. } => "CoverageOverlap",
            Error::EmptyBiclique(_) => "EmptyBiclique",
            Error::EmptyPartition => "EmptyPartition",
            Error::WeightsNotInduced { .. } => "WeightsNotInduced",
            Error::WeightCount { .. } => "WeightCount",
            Error::RootNotCovered(_) => "RootNotCovered",
            Error::NonIntegerResult(_) => "NonIntegerResult",
            Error::DegreeHypothesisViolated(_) => "DegreeHypothesisViolated",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::Parse { .. } => "Parse",
        }
    }
}
