use std::path::PathBuf;

use graph_frechet::io::ParseError;
use graph_frechet::ovh::OvError;
use graph_frechet::weight::ParseNumberError;
use graph_frechet::{FrechetError, GraphError};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Missing or conflicting flags; exits with status 2.
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("{path}: {source}")]
    Vectors {
        path: PathBuf,
        #[source]
        source: OvError,
    },
    #[error(transparent)]
    Number(#[from] ParseNumberError),
    #[error(transparent)]
    Frechet(#[from] FrechetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ov(#[from] OvError),
    #[error("P is not {kappa}-straight; pass --trust-straight to run anyway")]
    NotStraight { kappa: String },
    #[error("landmark oracle exceeds stretch {allowed} on {violations} of {pairs} P x Q pairs")]
    StretchValidation { allowed: String, violations: usize, pairs: usize },
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Parse { .. } | CliError::Vectors { .. } | CliError::Number(_) => "parse",
            CliError::Frechet(FrechetError::InvalidParameter(_)) => "invalid_parameter",
            CliError::Frechet(_) => "engine",
            CliError::Graph(_) => "graph",
            CliError::Ov(_) => "vectors",
            CliError::NotStraight { .. } => "not_straight",
            CliError::StretchValidation { .. } => "oracle_stretch",
        }
    }

    pub fn to_json(&self) -> String {
        let body = ErrorBody {
            kind: self.kind(),
            message: self.to_string(),
        };
        serde_json::json!({ "error": body }).to_string()
    }
}
