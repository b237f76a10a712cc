use thiserror::Error;

/// Errors raised by constructors and operations whose preconditions fail.
///
/// Invariant *failures* found by the verification checks are not errors; they are
/// recorded as defects in a [`crate::report::VerificationReport`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("level error: {0}")]
    Level(String),

    #[error("operator is not adjointable (A-linearity defect {defect:.3e})")]
    NotAdjointable { defect: f64 },

    #[error("precondition failed at indices {indices:?}: {message}")]
    Precondition { indices: Vec<usize>, message: String },

    #[error("no compatible normalization (defect {defect:.3e})")]
    Incompatible { defect: f64 },

    #[error("K·B does not cover G ({covered} of {order} elements)")]
    Transitivity { covered: usize, order: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
