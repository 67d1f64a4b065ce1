use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph has {n} vertices, the limit is {max}")]
    VertexCap { n: usize, max: usize },

    #[error("vertex {v} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("terminals must be two distinct vertices, got {s} and {t}")]
    InvalidTerminals { s: usize, t: usize },

    #[error("vertex {0} is a terminal and cannot be played")]
    TerminalMove(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("operation requires a weak link, game is {0}")]
    NotWeak(crate::solver::OutcomeClass),

    #[error("{0}")]
    Usage(String),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("oracle limited to {max} vertices, got {n}")]
    OracleTooLarge { n: usize, max: usize },

    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("atlas does not cover sizes {0:?}")]
    IncompleteAtlas(Vec<usize>),

    #[error("unknown link name {0:?}")]
    UnknownName(String),

    #[error("atlas line {line}: {source}")]
    AtlasFormat {
        line: usize,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
