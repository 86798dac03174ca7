use thiserror::Error;

use crate::foliation::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("movie is not a valid foliation encoding: {0}")]
    Invalid(ValidationReport),

    #[error("rank {rank} is out of range")]
    Range { rank: i64 },

    #[error("move not applicable: {0}")]
    Inapplicable(String),

    #[error("script step {step} failed: {diagnostic}")]
    Script { step: usize, diagnostic: String },

    #[error("enumeration refused: k_max={k_max} exceeds the guard {guard}")]
    Guard { k_max: usize, guard: usize },

    #[error("random generation failed: {0}")]
    Generation(String),

    /// Two independent computations disagreed; always an implementation bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),

    /// A step of the realization induction met a configuration the argument
    /// assumes away (e.g. a self-overlapping star).
    #[error("realization reached an unhandled configuration: {0}")]
    OpenCase(String),
}
