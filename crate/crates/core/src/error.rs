use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid stream: {0}")]
    InvalidStream(String),

    #[error("invalid scale {0}: must be a finite value >= 0")]
    InvalidScale(f64),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("discount factor {0} outside [0, 1]")]
    InvalidDelta(f64),

    #[error("invalid cost function: {0}")]
    InvalidCost(String),

    #[error("cost function is +inf everywhere on [0, 1)")]
    InfeasibleCost,

    #[error("invalid criterion: {0}")]
    InvalidCriterion(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("no convergence after {iters} iterations (last residual {residual:e})")]
    NonConvergence { iters: usize, residual: f64 },

    #[error("operator has no normalized kernel element")]
    NoInvariantFound,

    #[error("unknown axiom `{0}`")]
    InvalidAxiom(String),

    #[error("counterexample `{entry}` did not reproduce: {detail}")]
    RegressionFailure { entry: String, detail: String },

    #[error("invalid panel: {0}")]
    InvalidPanel(String),

    #[error("{file}:{line}:{column}: {message}")]
    Parse {
        file: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Io(String),
}
