//! Exact construction and verification of C-twisted Wick algebras over
//! rational functions in `q`.

pub mod checks;
pub mod contraction;
pub mod error;
mod grammar;
pub mod par;
pub mod quotient;
pub mod report;
pub mod scalar;
pub mod specfile;
pub mod tensor;
pub mod twist;
pub mod wick;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use tensor::{Signature, Tensor, Variance, Word};
pub use twist::{builtin_preset, Preset, TwistSystem};
