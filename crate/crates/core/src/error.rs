use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("search space exceeded: more than {limit} subsets would be examined")]
    SearchSpaceExceeded { limit: u64 },

    #[error("step budget of {budget} reduction steps exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("factorial of negative argument {value} (column {column}, n = {n})")]
    NegativeFactorial { column: usize, n: u64, value: String },

    #[error("circuit is unbalanced")]
    Unbalanced,

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("exponent {0:?} is not an interior lattice point")]
    NotInterior(Vec<i64>),

    #[error("interpolation failed: {0}")]
    Interpolation(String),

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
