use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={n}")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("size guard: {what} is {got}, limit is {limit}")]
    SizeGuard {
        what: &'static str,
        got: usize,
        limit: usize,
    },
    #[error("graph is not a tree")]
    NotTree,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not chordal")]
    NotChordal,
    #[error("graph is not bi-Cohen-Macaulay")]
    NotBiCm,
    #[error("the zero ideal has no Alexander dual")]
    ZeroIdeal,
    #[error("ideal is not generated in a single degree")]
    MixedDegrees,
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("substitution error: {0}")]
    Substitution(String),
    #[error("invalid field characteristic {0}: must be 0 or a prime below 2^31")]
    InvalidField(u64),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("malformed separation candidate: {0}")]
    InvalidCandidate(String),
    #[error("no spanning tree of the linear syzygy graph is a relation tree")]
    NoRelationTree,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
