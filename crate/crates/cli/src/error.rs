use ideal_core::io::DocError;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Doc(#[from] DocError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Resource(_) => 3,
            _ => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage(m) => json!({"error": "usage", "message": m}),
            CliError::Doc(DocError::Parse {
                line,
                column,
                message,
            }) => {
                json!({"error": "parse", "line": line, "column": column, "message": message})
            }
            CliError::Doc(DocError::Schema { pointer, message }) => {
                json!({"error": "schema", "pointer": pointer, "message": message})
            }
            CliError::Doc(DocError::Io(e)) => json!({"error": "io", "message": e.to_string()}),
            CliError::Invalid(m) => json!({"error": "invalid", "message": m}),
            CliError::Resource(m) => json!({"error": "resource", "message": m}),
        }
    }
}

pub fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

impl From<game_engine::VerifyError> for CliError {
    fn from(e: game_engine::VerifyError) -> Self {
        match e {
            game_engine::VerifyError::Budget(_) => CliError::Resource(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<bm_games::BmError> for CliError {
    fn from(e: bm_games::BmError) -> Self {
        match e {
            bm_games::BmError::Budget(_) => CliError::Resource(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<path_partition::PathError> for CliError {
    fn from(e: path_partition::PathError) -> Self {
        match e {
            path_partition::PathError::Budget(_) => CliError::Resource(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
