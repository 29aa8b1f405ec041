use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Mismatched vector or matrix sizes.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A linear system failed its conditioning check.
    #[error("singular system: {0}")]
    Singular(String),

    /// Code parameters that do not describe a real DFT code.
    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    /// Invalid systematic row selection.
    #[error("invalid systematic rows: {0}")]
    InvalidRows(String),

    /// A syndrome that violates the conjugate symmetry every real input produces.
    #[error("syndrome integrity check failed: {0}")]
    Integrity(String),

    /// Error locations could not be determined.
    #[error("localization failed: {0}")]
    Localization(String),

    /// Error magnitudes could not be determined.
    #[error("magnitude estimation failed: {0}")]
    Magnitude(String),

    /// Invalid model, quantizer or experiment settings.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
