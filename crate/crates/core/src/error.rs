use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("graph is disconnected; no spanning tree exists")]
    NoSpanningTree,

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("exhaustive oracle limited to {bound} vertices, graph has {vertices}")]
    OracleTooLarge { vertices: usize, bound: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    WrongDegree {
        vertex: VertexId,
        degree: usize,
        expected: usize,
    },

    #[error("no candidate edge keeps the graph Laman after removing vertex {0}")]
    Infeasible(VertexId),

    #[error("graph is not periodic-Laman: {0}")]
    NotLaman(String),

    #[error("move {index} failed: {source}")]
    ReplayFailed { index: usize, source: Box<Error> },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
