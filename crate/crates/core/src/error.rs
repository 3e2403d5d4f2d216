use thiserror::Error;

/// Errors raised by evaluation, verification and sampling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    /// A gamma argument or a series denominator sits on a nonpositive integer.
    #[error("pole: {0}")]
    Pole(String),

    /// A numerator gamma argument sits on a pole and no limit policy was requested.
    #[error("numerator pole: {0}")]
    NumeratorPole(String),

    #[error("no convergence after {terms_used} terms (tail estimate {tail_estimate:e})")]
    NoConvergence { terms_used: u64, tail_estimate: f64 },

    #[error("divergent series: {0}")]
    DivergentSeries(String),

    #[error("divergent inner series at outer index {index}: {reason}")]
    DivergentInner { index: u64, reason: String },

    #[error("series does not terminate")]
    NotTerminating,

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("inadmissible assignment: {0}")]
    Inadmissible(String),

    #[error("sampling exhausted after {0} draws")]
    SamplingExhausted(u32),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
