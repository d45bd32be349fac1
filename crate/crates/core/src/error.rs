use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for semigroup of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: usize, y: usize, z: usize },

    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} exceeds guard: {actual} > {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("operands belong to different ambient semigroups")]
    AmbientMismatch,

    /// A structural fact that must hold for every finite semigroup failed.
    /// Seeing this means the computation itself is wrong.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }

    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::IndexOutOfRange { .. }
                | Error::NotAssociative { .. }
                | Error::Malformed(_)
                | Error::Parse { .. }
        )
    }
}

pub(crate) fn guard(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::GuardExceeded {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
