use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 256")]
    NotPrime(u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{budget} budget exceeded: needs {needed}, limit {limit}")]
    BudgetExceeded {
        budget: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("kernel ambiguity at dimension {dim}, element {index}: incomparable maximal subspaces")]
    KernelAmbiguity { dim: usize, index: u32 },

    #[error("weak noetherianity violated: {0}")]
    WeakNoetherianViolated(String),

    #[error("set functor is not connected: S(0) has {0} elements")]
    NotConnected(usize),

    #[error("invalid functor data: {0}")]
    InvalidFunctor(String),

    #[error("query outside the window: {0}")]
    OutsideWindow(String),

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("invalid module data: {0}")]
    InvalidModule(String),

    #[error("splitting did not converge after {iterations} attempts (seed {seed})")]
    SplittingFailed { iterations: usize, seed: u64 },

    #[error("construction mismatch: {0}")]
    ConstructionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}
