use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("malformed vector: {0}")]
    MalformedVector(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("scalar {scalar} is not a unit")]
    NotAUnit { scalar: i64 },

    #[error("generators {i} and {j} do not commute: symplectic product {product}")]
    NonCommuting { i: usize, j: usize, product: i64 },

    #[error("generator {row} is linearly dependent on the preceding generators")]
    DependentRow { row: usize },

    #[error("expected {expected} generators for n={n}, k={k}, found {found}")]
    GeneratorCount { n: usize, k: usize, expected: usize, found: usize },

    #[error("gram matrix is not antisymmetric at ({i}, {j})")]
    NotAntisymmetric { i: usize, j: usize },

    #[error("operation requires the integer context")]
    NeedsIntegers,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("error is detectable: syndrome is nonzero modulo {p}")]
    Detectable { p: u64 },

    #[error("enumeration budget exceeded: {needed} candidates > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),
}
