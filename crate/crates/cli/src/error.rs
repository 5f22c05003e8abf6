use thiserror::Error;

use crate::ast::Pos;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Pos, message: String },

    #[error("{pos}: {message}")]
    Semantic { pos: Pos, message: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn syntax(pos: Pos, message: impl Into<String>) -> CliError {
        CliError::Syntax { pos, message: message.into() }
    }

    pub fn semantic(pos: Pos, message: impl Into<String>) -> CliError {
        CliError::Semantic { pos, message: message.into() }
    }

    pub fn pos(&self) -> Option<Pos> {
        match self {
            CliError::Syntax { pos, .. } | CliError::Semantic { pos, .. } => Some(*pos),
            CliError::Io { .. } => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
