use thiserror::Error;

/// Errors produced by the library and surfaced by the CLI.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid tuple {entries:?} for n={n}, m={m}")]
    InvalidTuple { entries: Vec<u32>, n: u32, m: u32 },
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("context mismatch: (n={0}, m={1}) vs (n={2}, m={3})")]
    ContextMismatch(u32, u32, u32, u32),
    #[error("coordinate {k} out of range 0..={m}")]
    CoordOutOfRange { k: usize, m: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("time budget of {0:.1}s exceeded")]
    BudgetExceeded(f64),
    #[error("enumeration cap {cap} exceeded (count is {count})")]
    CapExceeded { cap: u64, count: String },
    #[error("complex is not a complex: nonzero composite at position {0}")]
    NonzeroComposite(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
