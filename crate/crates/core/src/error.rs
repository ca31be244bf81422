use thiserror::Error;

/// Errors raised by word construction, rewriting, enumeration and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank}: must lie in 1..={max}")]
    InvalidRank { rank: usize, max: usize },

    #[error("index out of range: letter {index} at position {position} is not in 1..={rank}")]
    IndexOutOfRange {
        position: usize,
        index: u64,
        rank: u8,
    },

    #[error("cannot parse letter {token:?} at position {position}")]
    Parse { position: usize, token: String },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u8, right: u8 },

    #[error("reduction search exceeded its node budget of {budget} words")]
    BudgetExhausted { budget: usize },

    #[error("enumeration of K_{rank} exceeded the element limit of {limit}")]
    LimitExceeded { rank: u8, limit: usize },

    #[error("rank {rank} refused: ranks above {max} need an explicit override (--allow-large)")]
    RankRefused { rank: usize, max: usize },

    #[error("{0}")]
    Domain(String),

    #[error("invalid cache file: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

/// Coarse classification used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Bad input: malformed words, out-of-range letters, domain violations.
    Usage,
    /// Budgets, element caps, refused ranks and I/O.
    Resource,
    /// A computed state contradicts a theorem.
    Invariant,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvalidRank { .. }
            | Error::IndexOutOfRange { .. }
            | Error::Parse { .. }
            | Error::RankMismatch { .. }
            | Error::Domain(_)
            | Error::Cache(_) => ErrorClass::Usage,
            Error::BudgetExhausted { .. }
            | Error::LimitExceeded { .. }
            | Error::RankRefused { .. }
            | Error::Io(_) => ErrorClass::Resource,
            Error::InvariantBreach(_) => ErrorClass::Invariant,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
