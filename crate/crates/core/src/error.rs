use thiserror::Error;

use crate::tensor::Variance;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("evaluation pole: denominator vanishes at q = {at}")]
    EvaluationPole { at: String },

    /// Scalar grammar failure. `column` is 1-based within the parsed string.
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("slot error at position {pos}: expected {expected:?}, found {found:?}")]
    SlotMismatch {
        pos: usize,
        expected: Vec<Variance>,
        found: Vec<Variance>,
    },

    #[error("slot position {pos} out of range for signature of length {len}")]
    SlotOutOfRange { pos: usize, len: usize },

    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },

    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("duplicate entry ({0}, {1}, {2}, {3}) in {4}")]
    DuplicateEntry(usize, usize, usize, usize, &'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("unknown preset `{0}` (expected boson, fermion, mixed, qdeform or qdeform-alt)")]
    UnknownPreset(String),

    #[error("quotient operators are not well defined for this twist system: {0}")]
    NotWellDefined(String),

    #[error("{0}")]
    Invalid(String),
}
