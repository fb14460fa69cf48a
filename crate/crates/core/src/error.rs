use thiserror::Error;

/// Failure modes of the library. The CLI maps these onto exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or inconsistent input (shape mismatch, invalid ring table,
    /// element outside its precondition).
    #[error("invalid input: {0}")]
    Input(String),
    /// A cokernel that was expected to be finite has a free part.
    #[error("group is not finite")]
    NotFinite,
    /// The order has non-zero nilpotents.
    #[error("order is not reduced")]
    NotReduced,
    /// An enumeration exceeded its configured bound.
    #[error("too large: {what} exceeds bound {bound}")]
    TooLarge { what: String, bound: usize },
    /// No supported algorithm applies to this input.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A certificate or internal consistency check failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn too_large(what: impl Into<String>, bound: usize) -> Self {
        Error::TooLarge {
            what: what.into(),
            bound,
        }
    }
}
