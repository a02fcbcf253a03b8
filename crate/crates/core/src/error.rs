use thiserror::Error;

/// Failures surfaced by the counting engine.
///
/// Integrity failures (`InexactDivision`, `NegativeCount`,
/// `NonIntegralCoefficient`) never occur on a correct implementation; they
/// exist so a broken identity is reported instead of silently truncated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inexact division in {context}: {numerator} is not divisible by {divisor}")]
    InexactDivision {
        context: &'static str,
        numerator: String,
        divisor: String,
    },

    #[error("negative count produced in {context} at n = {n}")]
    NegativeCount { context: &'static str, n: usize },

    #[error("coefficient of x^{n} does not denormalize to a nonnegative integer")]
    NonIntegralCoefficient { n: usize },

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("{what} would enumerate {required} items, over the budget of {budget}")]
    OverBudget {
        what: String,
        required: String,
        budget: u64,
    },

    #[error("field size {0} is not supported by the oracle (expected 2, 3 or 5)")]
    UnsupportedField(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
