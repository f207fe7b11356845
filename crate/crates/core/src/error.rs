use thiserror::Error;

/// Errors raised by constructors, solvers and bound calculators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field order {p}^{e} exceeds the configured maximum {max}")]
    FieldTooLarge { p: u64, e: u32, max: u64 },

    #[error("degree must be at least 1")]
    ZeroDegree,

    #[error("no Hadamard matrix of order {order} (tried: {tried})")]
    HadamardOrder { order: usize, tried: String },

    #[error("invalid order {order}: {reason}")]
    InvalidOrder { order: usize, reason: String },

    #[error("design is invalid: {0}")]
    InvalidDesign(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("points {0} and {1} lie in exactly the same blocks and cannot be separated")]
    Unseparable(usize, usize),

    #[error("complete bipartite graphs do not have split resolving sets")]
    CompleteBipartite,

    #[error("no semi-resolving set found after {trials} trials (best attempt left {best_unresolved} pairs unresolved)")]
    RetriesExhausted { trials: u64, best_unresolved: u64 },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("instance of size {size} exceeds the exact-solver limit {limit}")]
    LimitExceeded { size: usize, limit: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
