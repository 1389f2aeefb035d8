use thiserror::Error;

use crate::config::Violation;
use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("digraph has a directed cycle through arc ({}, {})", witness.0, witness.1)]
    CyclicInput { witness: (Vertex, Vertex) },
    #[error("underlying graph is disconnected")]
    Disconnected,
}

/// Why a single move was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalReason {
    NoSuchArc,
    SourceEmpty,
    TargetOccupied,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("illegal move {from} -> {to}: {reason:?}")]
pub struct IllegalMove {
    pub from: Vertex,
    pub to: Vertex,
    pub reason: IllegalReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("digraph is not strongly biconnected")]
    NotStronglyBiconnected,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("v and w must differ")]
    SameVertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FeasibilityError {
    #[error("instance violates standing assumptions: {0:?}")]
    InvalidInstance(Vec<Violation>),
    #[error("digraph is not acyclic")]
    NotAcyclic,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("instance is infeasible")]
    Infeasible,
    #[error("path end {0} does not hold a hole")]
    NoHoleAtEnd(Vertex),
    #[error("block holds no hole")]
    NoHoleInBlock,
    #[error("source and target lie in one block")]
    SameBlock,
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Illegal(#[from] IllegalMove),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, oracle bound is {bound}")]
    TooLarge { n: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{message}")]
    Missing { message: String },
    #[error("invalid instance: {0:?}")]
    Validation(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("unsatisfiable generator spec: {0}")]
    UnsatisfiableSpec(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("instances have {n} vertices, oracle bound is {bound}")]
    TooLarge { n: usize, bound: usize },
}

impl From<OracleError> for CompareError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLarge { n, bound } => CompareError::TooLarge { n, bound },
        }
    }
}
