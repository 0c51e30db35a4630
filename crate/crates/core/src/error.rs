use thiserror::Error;

use crate::parser::SourceSpan;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{span}: {message}")]
    Syntax { span: SourceSpan, message: String },

    #[error("operation requires a positive program, but rule `{rule}` has a negative body")]
    NotPositive { rule: String },

    #[error("operation requires a normal program, but rule `{rule}` has a disjunctive head")]
    NotNormal { rule: String },

    /// An exhaustive oracle or enumeration was asked to range over more
    /// atoms than its configured bound.
    #[error("{what}: {atoms} atoms exceed the enumeration bound of {bound}")]
    TooLarge {
        what: &'static str,
        atoms: usize,
        bound: usize,
    },

    #[error("{what}: capacity of {limit} exceeded")]
    Capacity { what: &'static str, limit: usize },

    #[error("transformation step is not applicable to the program")]
    StaleStep,

    #[error("no greatest unfounded set exists for this model state")]
    NoGreatestUnfounded,

    #[error(
        "greatest unfounded set could not be decided: elimination and the optimistic bound \
         disagree on {candidates} atoms, above the oracle bound of {bound}"
    )]
    UnfoundedUndecided { candidates: usize, bound: usize },
}

impl Error {
    /// True for errors caused by size limits rather than malformed input.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::TooLarge { .. } | Error::Capacity { .. } | Error::UnfoundedUndecided { .. }
        )
    }
}
