use thiserror::Error;

use crate::graph::{VertexId, MAX_VERTICES};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("a graph needs at least one vertex")]
    NoVertices,

    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),

    #[error("vertex {vertex} out of range (graph has {vertex_count} vertices)")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("edge {edge} out of range (graph has {edge_count} edges)")]
    EdgeOutOfRange { edge: usize, edge_count: usize },

    #[error("the subgraph over the empty vertex set is not a graph")]
    EmptySubgraph,

    #[error("edge sequence is not a path: {0}")]
    InvalidPath(String),

    #[error("path {0} is not a cycle")]
    NotACycle(String),

    #[error("{0} requires a graph without sinks")]
    HasSinks(&'static str),

    #[error("vertex set {0} is not hereditary")]
    NotHereditary(String),

    #[error(
        "{what} over {vertices} vertices exceeds the cap of {cap}; \
         raise it explicitly (GRAPHALG_MAX_VERTICES) to proceed"
    )]
    CapExceeded {
        what: &'static str,
        vertices: usize,
        cap: usize,
    },

    #[error("v0, v1, v2 do not partition the {0} vertices of the graph")]
    NotAPartition(usize),

    #[error("vertex {0} is not in v2")]
    NotInIdealPart(VertexId),

    #[error("only {available} paths of the stability family end at vertex {vertex}, {requested} requested")]
    FiniteWitnessFamily {
        vertex: VertexId,
        available: usize,
        requested: usize,
    },

    #[error("enumeration space has {size} graphs, above the limit of {limit}")]
    SearchSpaceTooLarge { size: u128, limit: u128 },

    #[error("invalid enumeration spec: {0}")]
    InvalidEnumSpec(String),
}

impl Error {
    /// True for the errors raised when an input is too large to analyze
    /// exhaustively, as opposed to malformed input.
    pub fn is_cap_error(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. }
                | Error::SearchSpaceTooLarge { .. }
                | Error::TooManyVertices(_)
        )
    }
}
