//! Error type shared by all modules in this crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by constructors and operations in this crate.
///
/// Every variant is a caller mistake: a value outside its documented domain
/// or an operation applied to inputs it does not support. Nothing in this
/// crate fails at runtime once its inputs have validated.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An angle argument was NaN or infinite.
    #[error("angle must be finite, got {0}")]
    NonFiniteAngle(f64),

    /// A numeric or structural argument was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested operation is not defined for the given inputs.
    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Error {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Error {
        Error::UnsupportedOperation(msg.into())
    }
}
