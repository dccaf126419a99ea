use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("reduction polynomial {poly:?} is not a monic irreducible polynomial of degree {degree} over GF({p})")]
    ReduciblePolynomial { p: u32, degree: u32, poly: Vec<u32> },

    #[error("no built-in reduction polynomial for GF({p}^{r}); supply one explicitly")]
    UnsupportedField { p: u32, r: u32 },

    #[error("field order {0} is too large (at most 65536 elements are supported)")]
    FieldTooLarge(u64),

    #[error("element {value} is not a member of GF({q})")]
    InvalidElement { value: u32, q: u32 },

    #[error("zero has no multiplicative inverse")]
    DivisionByZero,

    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("the code is trivial (dimension 0)")]
    TrivialCode,

    #[error("empty preimage: threshold exceeds the largest attainable entropy value")]
    EmptyPreimage,

    #[error("MacWilliams transform produced a non-integral coefficient at weight {weight}")]
    NonIntegral { weight: usize },

    #[error("enumeration needs {needed} operations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
