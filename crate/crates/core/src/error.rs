use std::fmt;

/// Error type shared by all model, geometry, sampling and estimator code.
#[derive(Debug, Clone, PartialEq)]
pub enum CoreError {
    /// An argument is outside the mathematical domain of the operation.
    Domain(String),
    /// A sum or integral diverges for the given parameters.
    Divergent(String),
    /// A moment required by the operation is infinite.
    InfiniteMoment(String),
    /// The parameters fall outside the regime where the operation is defined.
    Regime(String),
    /// A sample set is too small or degenerate for the estimator.
    DegenerateSample(String),
    /// A quadrature or iteration failed to reach its tolerance.
    Numerical(String),
    /// A resource guard (pair budget, frontier size, table size) tripped.
    Budget(String),
    /// A bracketing precondition failed (e.g. threshold never crossed).
    Bracketing(String),
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::Domain(msg) => write!(f, "domain error: {msg}"),
            CoreError::Divergent(msg) => write!(f, "divergent: {msg}"),
            CoreError::InfiniteMoment(msg) => write!(f, "infinite moment: {msg}"),
            CoreError::Regime(msg) => write!(f, "regime error: {msg}"),
            CoreError::DegenerateSample(msg) => write!(f, "degenerate sample: {msg}"),
            CoreError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
            CoreError::Budget(msg) => write!(f, "resource guard: {msg}"),
            CoreError::Bracketing(msg) => write!(f, "bracketing error: {msg}"),
        }
    }
}

impl std::error::Error for CoreError {}

pub type Result<T> = std::result::Result<T, CoreError>;
