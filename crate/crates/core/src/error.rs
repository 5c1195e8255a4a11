use thiserror::Error;

use crate::expr::{EvalError, ParseError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("expression: {0}")]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),

    #[error("right-hand side is not in Im(L): adjoint pairing {pairing:e}")]
    NotInImage { pairing: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
        /// Best iterate seen, flattened.
        best: Option<Vec<f64>>,
    },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("bifurcation map vanishes on the circle of radius {radius}; degree undefined")]
    DegreeUndefined { radius: f64 },

    #[error("singular Jacobian at iterate {iteration}")]
    SingularJacobian { iteration: usize },

    #[error("no root found from {seeds} seeds")]
    NoRoot { seeds: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
