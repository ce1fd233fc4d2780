//! Error type shared across the library.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by ingestion, path analytics, and the experiment harness.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Malformed input row (wrong column count, unparseable number).
    /// `line` is 1-based and counts the header row.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A value outside the mathematical domain of an operation.
    #[error("{0}")]
    Domain(String),

    /// A window longer than the available series.
    #[error("window length {requested} exceeds series length {available}")]
    WindowTooLong { requested: usize, available: usize },

    /// Not enough observations for the requested statistic.
    #[error("{what} requires at least {required} observations, got {actual}")]
    InsufficientData {
        what: &'static str,
        required: usize,
        actual: usize,
    },

    /// Input whose degeneracy makes the estimator undefined
    /// (e.g. an all-zero regressor).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// An invalid experiment or CLI configuration.
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}
