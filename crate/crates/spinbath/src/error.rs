use std::path::PathBuf;

use thiserror::Error;

/// Unified error type for model construction, propagation, analysis and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration document could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A configuration value is missing, unknown or out of its domain.
    #[error("configuration error: {message}")]
    Config { message: String },

    /// An index addressed a basis state outside the layout.
    #[error("index error: {message}")]
    Index { message: String },

    /// Two objects that must share a layout, basis or bound do not.
    #[error("validation error: {message}")]
    Mismatch { message: String },

    /// A least-squares fit could not be carried out.
    #[error("fit error: {message}")]
    Fit { message: String },

    /// Numerical tolerances were violated during propagation.
    #[error("numerical failure: {message}")]
    Numerics { message: String },

    /// File I/O failed; the offending path is included.
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(message: impl Into<String>) -> Self {
        Error::Config {
            message: message.into(),
        }
    }

    pub(crate) fn index(message: impl Into<String>) -> Self {
        Error::Index {
            message: message.into(),
        }
    }

    pub(crate) fn mismatch(message: impl Into<String>) -> Self {
        Error::Mismatch {
            message: message.into(),
        }
    }

    pub(crate) fn fit(message: impl Into<String>) -> Self {
        Error::Fit {
            message: message.into(),
        }
    }

    pub(crate) fn numerics(message: impl Into<String>) -> Self {
        Error::Numerics {
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
