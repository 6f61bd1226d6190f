use koszulgraph_core::{BettiError, GraphError, IdealError, RecognizeError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedGraph6 { offset: usize, reason: String },
    #[error("malformed edge list at line {line}: {reason}")]
    MalformedEdgeList { line: usize, reason: String },
    #[error("edge list line {line}: {source}")]
    EdgeList {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("{requested} vertices requested, cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("stored classification does not re-validate: {0}")]
    Revalidation(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error(transparent)]
    Recognize(#[from] RecognizeError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
