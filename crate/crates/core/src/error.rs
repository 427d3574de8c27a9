use std::path::PathBuf;

use crate::graph::{Edge, VertexId};
use crate::rational::{ParseRationalError, Rational};
use crate::triangles::Triangle;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("parallel edge {0:?}")]
    ParallelEdge(Edge),
    #[error("negative weight {weight} on edge {edge:?}")]
    NegativeWeight { edge: Edge, weight: Rational },
    #[error("edge {0:?} is not in the graph")]
    MissingEdge(Edge),
    #[error("{0:?} is not a triangle on three distinct vertices of the graph")]
    NotATriangle(Triangle),
}

/// Errors from reading instance and solution files.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("{path}:{line}: {message}")]
    Syntax { path: String, line: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("epsilon must lie in (0, 1], got {0}")]
    EpsilonOutOfRange(Rational),
    #[error("epsilon split ({scale}, {search}) does not satisfy (1-a)(1-b) >= 1-{total}")]
    BadSplit {
        scale: Rational,
        search: Rational,
        total: Rational,
    },
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
}

/// Problems writing reports.
#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("serializing report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("writing csv: {0}")]
    Csv(String),
}
