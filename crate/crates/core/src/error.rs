use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({src}, {dst}) has non-positive weight {weight}")]
    NonPositiveWeight { src: NodeId, dst: NodeId, weight: f64 },

    #[error("edge ({src}, {dst}) has non-finite weight")]
    NonFiniteWeight { src: NodeId, dst: NodeId },

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("graph is aperiodic; the derived class graph is the graph itself")]
    Aperiodic,

    #[error("period class {class} does not exist (period is {gamma})")]
    NoSuchClass { class: usize, gamma: usize },

    #[error("exact evaluation needs {n} nodes but the cap is {cap}")]
    ExactCapExceeded { n: usize, cap: usize },

    #[error("colouring has {colouring} nodes but the graph has {graph}")]
    SizeMismatch { graph: usize, colouring: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gave up after {attempts} attempts without a strongly connected graph")]
    RetriesExhausted { attempts: usize },

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("unknown node label `{0}`")]
    UnknownLabel(String),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// True for failures of the filesystem rather than of the input's content.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io { .. } => true,
            Error::Csv(e) => e.is_io_error(),
            _ => false,
        }
    }
}
