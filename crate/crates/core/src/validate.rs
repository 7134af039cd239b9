use std::fmt;

use serde::Serialize;

use crate::model::{normalize, BusinessModel, DataKind, EdgeLabel, StakeholderId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DiagnosticCode {
    SelfLoopNonProcess,
    ProcessNotSelfLoop,
    UndeclaredStakeholder,
    EmptyProcessName,
    EmptyDataSubject,
    DisplayNameMismatch,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::SelfLoopNonProcess => "SELF_LOOP_NON_PROCESS",
            DiagnosticCode::ProcessNotSelfLoop => "PROCESS_NOT_SELF_LOOP",
            DiagnosticCode::UndeclaredStakeholder => "UNDECLARED_STAKEHOLDER",
            DiagnosticCode::EmptyProcessName => "EMPTY_PROCESS_NAME",
            DiagnosticCode::EmptyDataSubject => "EMPTY_DATA_SUBJECT",
            DiagnosticCode::DisplayNameMismatch => "DISPLAY_NAME_MISMATCH",
        }
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The model element a diagnostic points at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    /// Index into [`BusinessModel::edges`].
    Edge(usize),
    Stakeholder(StakeholderId),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub element: Element,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

/// Checks the structural rules of a model. An empty result means valid.
pub fn validate(model: &BusinessModel) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for s in model.stakeholders() {
        if normalize(&s.display_name) != s.id.as_str() {
            out.push(Diagnostic {
                code: DiagnosticCode::DisplayNameMismatch,
                element: Element::Stakeholder(s.id.clone()),
                message: format!(
                    "display name `{}` does not normalize to `{}`",
                    s.display_name, s.id
                ),
            });
        }
    }
    for (index, edge) in model.edges().iter().enumerate() {
        let diag = |code, message: String| Diagnostic {
            code,
            element: Element::Edge(index),
            message,
        };
        for end in [&edge.src, &edge.dst] {
            if model.stakeholder(end).is_none() {
                out.push(diag(
                    DiagnosticCode::UndeclaredStakeholder,
                    format!("edge {index} references undeclared stakeholder `{end}`"),
                ));
            }
            if edge.src == edge.dst {
                break;
            }
        }
        match (&edge.label, edge.is_self_loop()) {
            (EdgeLabel::Process(_), false) => out.push(diag(
                DiagnosticCode::ProcessNotSelfLoop,
                format!(
                    "process edge {index} goes from `{}` to `{}`",
                    edge.src, edge.dst
                ),
            )),
            (label, true) if !label.is_process() => out.push(diag(
                DiagnosticCode::SelfLoopNonProcess,
                format!("self-loop on `{}` labeled `{label}`", edge.src),
            )),
            _ => {}
        }
        match &edge.label {
            EdgeLabel::Process(name) if !is_token(name) => out.push(diag(
                DiagnosticCode::EmptyProcessName,
                format!("process edge {index} has no usable algorithm name"),
            )),
            EdgeLabel::Data(DataKind::PersonalIndividual(subject)) if !is_token(subject) => out
                .push(diag(
                    DiagnosticCode::EmptyDataSubject,
                    format!("personal data edge {index} has no usable subject"),
                )),
            _ => {}
        }
    }
    out
}

/// Label payload tokens: non-empty, no whitespace or label punctuation.
pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_token_char)
}

pub(crate) fn is_token_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.')
}
