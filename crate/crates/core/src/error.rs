use thiserror::Error;

/// Errors raised by the engine. Mathematical check failures are reported
/// through the various `*Report` types instead; an `Error` means the
/// computation could not be carried out at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {n} generators")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("negative exponents are not allowed in a polynomial-only bracket table: {element}")]
    LaurentInput { element: String },

    #[error("derivation is not nilpotent on {element} within {cutoff} iterations")]
    CutoffExceeded { element: String, cutoff: usize },

    #[error("malformed algebra spec: {0}")]
    MalformedSpec(String),

    #[error("hypothesis (b) fails at step {step}: alpha*delta - delta*(alpha + s) is nonzero on {generator}: {residual}")]
    ShiftRelation {
        step: usize,
        generator: String,
        residual: String,
    },

    #[error("hypothesis (c) fails at step {step}: alpha({generator}) = {value} is not a scalar multiple of {generator}")]
    NonDiagonalAlpha {
        step: usize,
        generator: String,
        value: String,
    },

    #[error("no shift constant s available for step {step}: {reason}")]
    MissingShift { step: usize, reason: String },

    #[error("torus data does not satisfy the hypotheses at step {step}: {witness}")]
    TorusHypothesis { step: usize, witness: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("catalog cross-check failed for {family}: {detail}")]
    CatalogMismatch { family: String, detail: String },

    #[error("matrix is not in GL_n(Z): determinant {det}")]
    NotUnimodular { det: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
