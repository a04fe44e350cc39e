//! Error and violation types shared across the crate.

use thiserror::Error;

/// A named admissibility violation.
///
/// `clause` identifies the first rule that failed (e.g. `"column.pair"`),
/// `detail` carries a human-readable description of the offending data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{clause}: {detail}")]
pub struct Violation {
    pub clause: String,
    pub detail: String,
}

impl Violation {
    pub fn new(clause: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            clause: clause.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(#[from] Violation),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
    #[error("embedding row is not executable: {0}")]
    UnsupportedEmbedding(String),
    #[error("not in split image: {0}")]
    NotInSplitImage(String),
    #[error("vertex budget exceeded: explored {explored} vertices, budget {budget}")]
    BudgetExceeded { explored: usize, budget: usize },
    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),
    #[error("no legal move: {0}")]
    NoLegalMove(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
