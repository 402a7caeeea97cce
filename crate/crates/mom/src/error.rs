use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto its exit-code
/// contract (1 usage / 2 resource cap / 3 integrity).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured enumeration or state cap was exceeded. Never a silent
    /// truncation: the computation is abandoned.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A determinant or denominator factor fell below the genericity
    /// tolerance; the caller should perturb the points or use the
    /// combinatorial path.
    #[error("near-singular evaluation: {0}")]
    NearSingular(String),

    /// An internal cross-check failed. This signals a counting or
    /// interpolation bug and is never auto-corrected.
    #[error("integrity check failed: {0}")]
    Integrity(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
