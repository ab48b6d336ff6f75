//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by gridrep operations.
///
/// Verification *failures* (an axiom that does not hold) are not errors:
/// they are reported through the verifier's report types. Errors signal
/// malformed input or violated preconditions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A field description is not `Q` or `Fp:<prime>` with a prime below `2^31`.
    #[error("invalid field: {0}")]
    InvalidField(String),
    /// Text could not be parsed into a scalar, matrix or representation.
    #[error("parse error: {0}")]
    Parse(String),
    /// Matrix or vector sizes do not fit together.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Two objects live over different grids or different fields.
    #[error("shape or field mismatch: {0}")]
    ShapeMismatch(String),
    /// A representation or morphism failed validation.
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    /// An operation's precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
