use std::path::PathBuf;

use counsel_core::{EvalError, FuzzyError, ParseDiagnostic, RelationError};
use thiserror::Error;

/// Process exit code for a reported failure: 1 for content problems,
/// 2 for I/O. Usage errors exit 2 via the argument parser itself.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Malformed { path: PathBuf, message: String },
    #[error("{}: student `{student}`: `{subject}` score {value} is outside the 0..=100 scale", path.display())]
    ScoreOutOfRange {
        path: PathBuf,
        student: String,
        subject: String,
        value: f64,
    },
    #[error("{}: {} diagnostic(s)", path.display(), diagnostics.len())]
    RulebookSyntax {
        path: PathBuf,
        diagnostics: Vec<ParseDiagnostic>,
    },
    #[error("{}: knowledge base failed validation", path.display())]
    KbInvalid { path: PathBuf, findings: Vec<String> },
    #[error("student `{student}`: subjects `{first}` and `{second}` are aliases of each other but carry different scores")]
    AliasConflict {
        student: String,
        first: String,
        second: String,
    },
    #[error("unknown category `{category}` (categories: {known})")]
    UnknownCategory { category: String, known: String },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Query(#[from] RelationError),
    #[error(transparent)]
    Curve(#[from] FuzzyError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            _ => 1,
        }
    }

    /// Extra lines to print under the error message.
    pub fn detail_lines(&self) -> Vec<String> {
        match self {
            CliError::RulebookSyntax { diagnostics, .. } => {
                diagnostics.iter().map(|d| d.to_string()).collect()
            }
            CliError::KbInvalid { findings, .. } => findings.clone(),
            _ => Vec::new(),
        }
    }
}
