//! Error type shared across the crate.

/// Coarse classification of failures, used by callers (notably the CLI) to
/// pick exit codes: usage errors are misuse of an interface, domain errors are
/// well-formed inputs outside an operation's domain, and internal errors mark
/// conditions that would contradict a proved structure theorem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Usage,
    Domain,
    Internal,
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("unsupported arity {0}: {1}")]
    UnsupportedArity(usize, &'static str),
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("not a bijection on {{1..{0}}}")]
    NotAPermutation(usize),
    #[error("not symmetric: the input changes under the transposition (x{} x{})", .0 + 1, .1 + 1)]
    NotSymmetric(usize, usize),
    #[error("nonzero scalar part: the input does not lie in the commutator ideal")]
    NonzeroScalar,
    #[error("degree {degree} exceeds the truncation bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ArityMismatch(..)
            | Error::UnsupportedArity(..)
            | Error::VariableOutOfRange { .. }
            | Error::NotAPermutation(..)
            | Error::DegreeOverflow { .. }
            | Error::InvalidArgument(..) => ErrorKind::Usage,
            Error::NotSymmetric(..) | Error::NonzeroScalar => ErrorKind::Domain,
            Error::Inconsistent(..) => ErrorKind::Internal,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
