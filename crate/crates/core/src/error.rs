use thiserror::Error;

/// Errors raised by the rate-region evaluators and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside its domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid relay split ({a3p}, {a3pp}): need 0 <= a3', a3'' and a3' + a3'' <= 1")]
    InvalidSplit { a3p: f64, a3pp: f64 },

    #[error("singular denominator: {0}")]
    Singularity(&'static str),

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("brute-force cap exceeded: {needed} message bits > cap {cap}")]
    CapExceeded { needed: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
