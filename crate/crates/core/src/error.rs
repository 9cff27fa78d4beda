use thiserror::Error;

/// Errors raised by hypergraph construction and the walk/spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge {0} has no members")]
    EmptyEdge(usize),
    #[error("edge {edge} lists vertex `{vertex}` more than once")]
    DuplicateMember { edge: usize, vertex: String },
    #[error("edge {edge} references undeclared vertex `{vertex}`")]
    UnknownMember { edge: usize, vertex: String },
    #[error("{what} must be finite and > 0, got {value}")]
    NonPositiveWeight { what: String, value: f64 },
    #[error("hypergraph is disconnected: vertex `{0}` is not reachable from the first vertex")]
    DisconnectedHypergraph(String),
    #[error("edge {0} has a single member; the non-lazy walk needs at least two")]
    SingletonEdge(usize),
    #[error("restart probability must lie in (0, 1), got {0}")]
    BadBeta(f64),
    #[error("invalid distribution: {0}")]
    BadDistribution(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("{what}: size {size} exceeds limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("{0} did not converge")]
    ConvergenceFailure(String),
    #[error("linear system is singular (pivot {pivot:e} at column {column})")]
    SingularSystem { column: usize, pivot: f64 },
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("vertex `{0}` has different weights across its incident edges")]
    NotEdgeIndependent(String),
    #[error("edge {edge} has non-unit weight for vertex `{vertex}`")]
    NotTrivialWeights { edge: usize, vertex: String },
    #[error("vertex {0} has no incident edges in the graph")]
    IsolatedVertex(usize),
    #[error("distribution is not stationary for the chain (residual {0:e})")]
    NotStationary(f64),
    #[error("score {score} of player {player} is outside the exp() range")]
    ScoreOverflow { player: usize, score: f64 },
    #[error("rankings contain different elements")]
    ElementMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("chain did not mix within {0} steps")]
    Unmixed(usize),
}

impl Error {
    /// Variant name, used by the CLI to report which error occurred.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::EmptyEdge(_) => "EmptyEdge",
            Error::DuplicateMember { .. } => "DuplicateMember",
            Error::UnknownMember { .. } => "UnknownMember",
            Error::NonPositiveWeight { .. } => "NonPositiveWeight",
            Error::DisconnectedHypergraph(_) => "DisconnectedHypergraph",
            Error::SingletonEdge(_) => "SingletonEdge",
            Error::BadBeta(_) => "BadBeta",
            Error::BadDistribution(_) => "BadDistribution",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::ConvergenceFailure(_) => "ConvergenceFailure",
            Error::SingularSystem { .. } => "SingularSystem",
            Error::NotSymmetric(_) => "NotSymmetric",
            Error::NotEdgeIndependent(_) => "NotEdgeIndependent",
            Error::NotTrivialWeights { .. } => "NotTrivialWeights",
            Error::IsolatedVertex(_) => "IsolatedVertex",
            Error::NotStationary(_) => "NotStationary",
            Error::ScoreOverflow { .. } => "ScoreOverflow",
            Error::ElementMismatch => "ElementMismatch",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Parse(_) => "Parse",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Unmixed(_) => "Unmixed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
