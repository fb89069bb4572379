use thiserror::Error;

/// Errors produced by sample construction, estimation, breakdown analysis
/// and the simulation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sample is empty")]
    EmptySample,
    #[error("values and weights differ in length ({values} vs {weights})")]
    LengthMismatch { values: usize, weights: usize },
    #[error("weight at index {index} is not strictly positive ({weight})")]
    NonPositiveWeight { index: usize, weight: f64 },
    #[error("value at index {index} is not finite ({value})")]
    NonFiniteValue { index: usize, value: f64 },
    #[error("pair set is empty (n = {n}, scheme {scheme})")]
    EmptyPairSet { n: usize, scheme: &'static str },
    #[error("weighted set is empty")]
    EmptySet,
    #[error("sample of size {n} is too large for exhaustive search (max {max})")]
    SampleTooLarge { n: usize, max: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("at least 2 replications are required, got {0}")]
    InsufficientReplications(usize),
    #[error("unknown sensitivity case {0} (expected 1..=12)")]
    BadCase(u32),
    #[error("outlier proportion {0} outside [0, 0.25]")]
    BadProportion(f64),
    #[error("input line {line}: {message}")]
    Input { line: u64, message: String },
    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
