use serde_json::json;
use thiserror::Error;
use triwidth_core::apps::morse::MorseViolation;
use triwidth_core::{AppError, DecompositionError, GraphError, MsoError, TriangulationError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Triangulation { path: String, source: TriangulationError },
    #[error("{path}: {source}")]
    Graph { path: String, source: GraphError },
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Mso(#[from] MsoError),
    #[error(transparent)]
    App(#[from] AppError),
    #[error("matching is not a Morse matching: {0}")]
    Morse(#[from] MorseViolation),
    #[error("backends disagree: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Triangulation { .. } => "triangulation",
            CliError::Graph { .. } => "graph",
            CliError::Decomposition(_) => "decomposition",
            CliError::Mso(MsoError::Budget { .. }) | CliError::App(AppError::Budget { .. }) => "budget",
            CliError::Mso(_) => "mso",
            CliError::App(AppError::WrongDimension { .. }) => "dimension",
            CliError::App(AppError::NotClosed(_)) => "not_closed",
            CliError::App(AppError::Decomposition(_)) => "decomposition",
            CliError::App(AppError::Table(_)) => "table",
            CliError::App(AppError::Mso(_)) => "mso",
            CliError::Morse(_) => "morse",
            CliError::Mismatch(_) => "mismatch",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}
