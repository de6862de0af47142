//! Typed terms for dagger compact closed categories with biproducts,
//! their exact matrix semantics, directed rewriting, and machine checks
//! of teleportation-style protocols.

pub mod cli;
pub mod constructions;
pub mod kernel;
pub mod matrix;
pub mod protocols;
pub mod rewrite;
pub mod scalars;

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::kernel::TypeError;
use crate::matrix::MatrixError;
use crate::protocols::ProtocolError;
use crate::rewrite::RewriteError;

/// Any failure surfaced by the command line or the C interface.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] cli::ParseError),
    #[error("type error: {0}")]
    Type(#[from] TypeError),
    #[error("model error: {0}")]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("model error: {0}")]
    Model(String),
    #[error("{0} case(s) not equal")]
    Unequal(usize),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl Error {
    pub const PARSE: i32 = 2;
    pub const TYPE: i32 = 3;
    pub const MODEL: i32 = 4;
    pub const UNEQUAL: i32 = 5;

    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        fn matrix(e: &MatrixError) -> i32 {
            match e {
                MatrixError::Type(_) => Error::TYPE,
                _ => Error::MODEL,
            }
        }
        match self {
            Error::Parse(_) => Self::PARSE,
            Error::Type(_) => Self::TYPE,
            Error::Matrix(e) => matrix(e),
            Error::Rewrite(RewriteError::Matrix(e)) => matrix(e),
            Error::Rewrite(_) => Self::TYPE,
            Error::Protocol(ProtocolError::Type(_)) => Self::TYPE,
            Error::Protocol(ProtocolError::Matrix(e)) => matrix(e),
            Error::Protocol(_) | Error::Construction(_) | Error::Model(_) => Self::MODEL,
            Error::Unequal(_) => Self::UNEQUAL,
            Error::Usage(_) | Error::Io { .. } => 1,
        }
    }
}
