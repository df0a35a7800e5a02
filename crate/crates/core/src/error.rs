use thiserror::Error;

use crate::transforms::Rule;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polygonal order must be at least 3, got {0}")]
    InvalidOrder(u64),

    #[error("form coefficients must be positive, got ({0}, {1}, {2})")]
    InvalidForm(u64, u64, u64),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("unsupported form ({0}, {1}, {2}): no closed-form excluded set is known here")]
    UnsupportedForm(u64, u64, u64),

    #[error("precondition of {rule} violated: {reason}")]
    Precondition { rule: Rule, reason: String },

    #[error("search exhausted in {0} although a solution must exist")]
    SearchExhausted(&'static str),

    #[error("no pipeline for sum {0}")]
    UnsupportedSum(String),

    #[error("pipeline failed at step {step}: {reason}")]
    PipelineFailure { step: String, reason: String },

    #[error("cannot parse sum {input:?}: {reason}")]
    SumSyntax { input: String, reason: String },
}

impl Error {
    pub(crate) fn precondition(rule: Rule, reason: impl Into<String>) -> Self {
        Error::Precondition {
            rule,
            reason: reason.into(),
        }
    }

    pub(crate) fn pipeline(step: impl Into<String>, reason: impl ToString) -> Self {
        Error::PipelineFailure {
            step: step.into(),
            reason: reason.to_string(),
        }
    }
}
