use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} exceeds bound {limit} (needed {needed})")]
    BoundExceeded {
        what: &'static str,
        limit: u64,
        needed: u64,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ragged input: expected rows of length {expected}, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible")]
    Reducible,
    #[error("element {0} is out of range for the field")]
    BadElement(u64),
    #[error("ill-typed bimodule action: {0}")]
    IllTypedBimodule(String),
    #[error("matrix set is not closed under the ring action")]
    NotActionClosed,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("theorem check failed: {0}")]
    TheoremMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_bound(what: &'static str, needed: u64, limit: u64) -> Result<()> {
    if needed > limit {
        Err(Error::BoundExceeded {
            what,
            limit,
            needed,
        })
    } else {
        Ok(())
    }
}
