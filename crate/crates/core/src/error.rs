use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("points {i} and {j} coincide (distance {distance:e} below the separation floor)")]
    CoincidentPoints { i: usize, j: usize, distance: f64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("distances are not realizable in R^3 (Cayley-Menger value {value:e})")]
    NonRealizable { value: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("sampler gave up after {attempts} attempts for {kind}")]
    SamplerExhausted { kind: String, attempts: usize },

    #[error("trial {trial}: {source}")]
    Trial {
        trial: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// True for errors caused by coincident or degenerate input geometry.
    pub fn is_degenerate_input(&self) -> bool {
        match self {
            Error::CoincidentPoints { .. } | Error::Degenerate(_) | Error::NonRealizable { .. } => {
                true
            }
            Error::Trial { source, .. } => source.is_degenerate_input(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
