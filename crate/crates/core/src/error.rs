use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("vertex {vertex} is out of range for a graph with {vertex_count} vertices")]
    InvalidVertex {
        vertex: VertexId,
        vertex_count: usize,
    },

    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),

    /// An exhaustive routine was asked to run on an input larger than it is allowed to handle.
    #[error("{routine} is limited to {limit}, got {actual}")]
    Guard {
        routine: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shortest-path count between {from} and {to} exceeds 128 bits")]
    CountOverflow { from: VertexId, to: VertexId },
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::EmptyInput)
    }
}
