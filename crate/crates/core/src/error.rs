//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by kernel, witness, and solver routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument was outside the valid domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A tail or kernel series does not converge for the given parameters.
    #[error("divergent series: {0}")]
    DivergentSeries(String),

    /// A requested tolerance cannot be certified within the term budget.
    #[error("tolerance not met: requested {requested:e}, achieved bound {achieved:e}")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    /// A hypothesis required by the theorem being applied does not hold.
    #[error("theorem hypothesis violated: condition {condition} fails (lhs={lhs:e}, rhs={rhs:e})")]
    HypothesisViolated {
        condition: &'static str,
        lhs: f64,
        rhs: f64,
    },

    /// Inconsistent or incomplete configuration (wrong family for a
    /// condition tag, missing delta, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// A certified quantity failed its certificate (e.g. sign alternation).
    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
