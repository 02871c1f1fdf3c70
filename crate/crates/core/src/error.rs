use thiserror::Error;

use crate::solver::Colouring;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size mismatch: graph has {graph} vertices, list assignment covers {lists}")]
    SizeMismatch { graph: usize, lists: usize },

    #[error("component too large: {size} vertices exceeds the exact-solver cap of {cap}")]
    ComponentTooLarge { size: usize, cap: usize },

    #[error("graph too large: {size} vertices exceeds the cap of {cap}")]
    GraphTooLarge { size: usize, cap: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("base lists admit a proper colouring, so the gadget would not be bad")]
    BaseColourable { colouring: Colouring },

    #[error("unknown formula id `{0}`")]
    UnknownFormula(String),

    #[error("parameter out of domain: {0}")]
    OutOfDomain(String),

    #[error("bound inapplicable: 1 - alpha - beta/log s = {gamma} is not positive")]
    BoundInapplicable { gamma: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }

    /// True for the errors a caller should treat as "input was too hard", never as a verdict.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::ComponentTooLarge { .. } | Error::GraphTooLarge { .. }
        )
    }
}
