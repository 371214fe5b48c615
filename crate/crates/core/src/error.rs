use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KlError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{k} exceeds the table-size guard of 2^24")]
    TableTooLarge { p: u64, k: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("Kloosterman sum requires a nonzero argument")]
    ZeroArgument,
    #[error("invalid Kloosterman spec: {0}")]
    InvalidSpec(String),
    #[error("brute force needs {needed} multiply-adds, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("value at log {log} is not real (imaginary part {imag:e})")]
    NotReal { log: usize, imag: f64 },
    #[error("invalid root system type {0}")]
    InvalidType(String),
    #[error("representation is not presented by a single dominant highest weight")]
    NotIrreducible,
    #[error("principal sl2 peeling failed: {0}")]
    NotSL2Decomposable(String),
    #[error("unsupported representation: {0}")]
    UnsupportedRep(String),
    #[error("census not defined for type {0}")]
    WrongType(String),
    #[error("census check failed: {0}")]
    CensusFailure(String),
    #[error("p = {p} divides #W = {order}")]
    BadPrime { p: u64, order: u128 },
    #[error("factor {factor:?} occurs with multiplicity {multiplicity} in the Coxeter characteristic polynomial")]
    NonUniqueSubmodule { factor: Vec<u64>, multiplicity: usize },
    #[error("Swan count {count} is not divisible by h = {h}")]
    NonIntegerSwan { count: usize, h: usize },
    #[error("no monodromy group listed for {0}")]
    Unlisted(String),
    #[error("cache I/O error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, KlError>;
