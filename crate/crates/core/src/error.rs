use thiserror::Error;

/// Errors raised by the bound computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("eigenvalue iteration did not converge after {iterations} sweeps at index {index}")]
    NoConvergence { index: usize, iterations: usize },

    #[error("bound is vacuous: {0}")]
    Vacuous(String),

    #[error("no negative spectrum: smallest eigenvalue {0} is not negative")]
    NoNegativeSpectrum(f64),

    #[error("bound inapplicable: R - m - eps = {0} is not positive")]
    Inapplicable(f64),

    #[error("size guard exceeded: {what} = {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("root bracketing failed for order {0}")]
    Bracketing(f64),

    #[error("tail not certified up to K = {k}: range [{m}, {big_m}], tail bound {tail}")]
    Uncertified { k: usize, m: f64, big_m: f64, tail: f64 },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl BoundError {
    /// True for the outcomes the CLI reports as a vacuous bound rather than an input error.
    pub fn is_vacuous(&self) -> bool {
        matches!(
            self,
            BoundError::Vacuous(_) | BoundError::NoNegativeSpectrum(_) | BoundError::Inapplicable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, BoundError>;
