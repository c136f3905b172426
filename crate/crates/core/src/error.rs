use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the workbench.
///
/// The CLI maps these onto process exit codes through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: usize, right: usize },

    #[error("invalid modulus {0}")]
    InvalidModulus(usize),

    #[error("element {elem} out of range for modulus {n}")]
    ElementOutOfRange { elem: i64, n: usize },

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("{value} is not a unit modulo {n}")]
    NotUnit { value: usize, n: usize },

    #[error("empty set where a nonempty one is required")]
    EmptySet,

    #[error("A+B covers the whole group")]
    FullSumset,

    #[error("zero difference")]
    ZeroDifference,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}:{line}: {msg}")]
    Record {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("schema mismatch in {path}: {msg}")]
    Schema { path: PathBuf, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for usage problems, 3 for capacity, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity(_) => 3,
            Error::ModulusMismatch { .. }
            | Error::InvalidModulus(_)
            | Error::ElementOutOfRange { .. }
            | Error::NotPrime(_)
            | Error::NotUnit { .. }
            | Error::EmptySet
            | Error::FullSumset
            | Error::ZeroDifference
            | Error::Precondition(_)
            | Error::Range(_)
            | Error::Parse(_) => 2,
            Error::Record { .. } | Error::Schema { .. } | Error::Io { .. } => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
