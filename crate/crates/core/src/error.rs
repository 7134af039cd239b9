use std::fmt;

use thiserror::Error;

use crate::model::StakeholderId;
use crate::validate::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("stakeholder name is empty after normalization")]
    EmptyStakeholderId,
    #[error("stakeholder `{0}` declared twice")]
    DuplicateStakeholder(StakeholderId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{reason} (at offset {offset})")]
pub struct TimestepError {
    /// Byte offset into the timestep text.
    pub offset: usize,
    pub reason: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseErrorCode {
    SyntaxError,
    DuplicateStakeholder,
    UnknownLabel,
    UndeclaredStakeholder,
    BadTimestep,
}

impl ParseErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseErrorCode::SyntaxError => "SYNTAX_ERROR",
            ParseErrorCode::DuplicateStakeholder => "DUPLICATE_STAKEHOLDER",
            ParseErrorCode::UnknownLabel => "UNKNOWN_LABEL",
            ParseErrorCode::UndeclaredStakeholder => "UNDECLARED_STAKEHOLDER",
            ParseErrorCode::BadTimestep => "BAD_TIMESTEP",
        }
    }
}

impl fmt::Display for ParseErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parse failure with a 1-based line and column (columns count characters).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {code}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub code: ParseErrorCode,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SerializeError {
    #[error("model `{model}` is invalid ({} diagnostics)", diagnostics.len())]
    InvalidModel {
        model: String,
        diagnostics: Vec<Diagnostic>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeError {
    #[error(
        "stakeholder `{id}` is an individual in [{}] but an institution in [{}]",
        individual_in.join(", "),
        institution_in.join(", ")
    )]
    KindConflict {
        id: StakeholderId,
        individual_in: Vec<String>,
        institution_in: Vec<String>,
    },
    #[error("corpus contains no business models")]
    EmptyCorpus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("alias map line {line}: {message}")]
pub struct AliasError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("graph needs at least two nodes")]
    TooSmall,
    #[error("graph has no edges")]
    NoEdges,
    #[error("no degree is at least k_min")]
    NoQualifyingDegrees,
    #[error("k_min must be positive")]
    InvalidKMin,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("unknown stakeholder `{0}`")]
    NotFound(StakeholderId),
    #[error("top-k must be at least 1")]
    InvalidTopK,
}
