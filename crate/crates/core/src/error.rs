use thiserror::Error;

/// A lexical or syntactic problem in TBox text, with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StpError {
    #[error("interval `{0}` is declared twice")]
    DuplicateInterval(String),
    #[error("unknown interval `{0}`")]
    UnknownInterval(String),
    #[error("network has no origin variable")]
    NoOrigin,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("unknown concrete domain `{0}` (expected rcc8 or cyct)")]
    UnknownDomain(String),
    #[error("unknown {domain} atom `{atom}`")]
    UnknownAtom { domain: &'static str, atom: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("TBox is not well-formed: {}", .0.join("; "))]
    Invalid(Vec<String>),
}
