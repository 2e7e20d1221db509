use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("binomial argument below -1: binom({n}, {k})")]
    BinomialDomain { n: i64, k: i64 },

    #[error("lattice-path enumeration budget exceeded: i + j = {total} > {budget}")]
    EnumerationBudget { total: usize, budget: usize },

    #[error("Hermite degree sum {total} exceeds the quadrature budget {budget}")]
    DegreeBudget { total: usize, budget: usize },

    #[error("label list has length {got}, shape {shape} needs {expected}")]
    ArityMismatch {
        shape: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not converge: estimated relative error {estimate:e}")]
    QuadratureNonConvergence { estimate: f64 },

    #[error("invalid mollifier: {0}")]
    Mollifier(String),

    #[error("invalid simulation config: {0}")]
    Config(String),

    #[error("blow-up in layer {layer} at t = {time}: |h| = {value}")]
    BlowUp { layer: usize, time: f64, value: f64 },

    #[error("Hopf-Cole field lost positivity at t = {time}, grid index {index}")]
    PositivityLoss { time: f64, index: usize },

    #[error("I/O failure: {0}")]
    Io(String),

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
