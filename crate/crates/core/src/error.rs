use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({u}, {v}) has an id outside [0, {n})")]
    IdOutOfRange { u: VertexId, v: VertexId, n: usize },
    #[error(
        "graph is not 2-degenerate: vertices {stuck:?} induce a subgraph of minimum degree >= 3"
    )]
    NotTwoDegenerate { stuck: Vec<VertexId> },
    #[error("no path from {s} to {t} under the given exclusions")]
    NoPath { s: VertexId, t: VertexId },
    #[error("vertex {0} repeats along the walk")]
    RepeatedVertex(VertexId),
    #[error("({0}, {1}) is not an edge of the host graph")]
    MissingEdge(VertexId, VertexId),
    #[error("a cycle needs at least 3 vertices, got {0}")]
    ShortCycle(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}
