use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{self, EvalError, Expr};

/// `y(t+2) + b·y(t+1) + c·y(t) = g(t, y(t))` with period `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Problem {
    pub b: f64,
    pub c: f64,
    pub n: usize,
    #[serde(serialize_with = "ser_expr")]
    pub g: Expr,
}

fn ser_expr<S: serde::Serializer>(e: &Expr, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(e)
}

impl Problem {
    pub fn new(b: f64, c: f64, n: usize, g: Expr) -> Result<Self> {
        if !b.is_finite() || !c.is_finite() {
            return Err(Error::InvalidProblem("b and c must be finite".into()));
        }
        if c == 0.0 {
            return Err(Error::InvalidProblem("c must be nonzero".into()));
        }
        if n < 2 {
            return Err(Error::InvalidProblem(format!("period N must be at least 2, got {n}")));
        }
        Ok(Problem { b, c, n, g })
    }

    /// Builds a problem from expression text.
    pub fn parse(b: f64, c: f64, n: usize, g: &str) -> Result<Self> {
        Self::new(b, c, n, expr::parse(g)?)
    }

    #[inline]
    pub fn g(&self, t: usize, x: f64) -> Result<f64, EvalError> {
        self.g.eval(t as u64, x)
    }

    /// True when `g(t, 0) = 0` for every `t` in one period.
    pub fn fixes_zero(&self) -> bool {
        (0..self.n).all(|t| matches!(self.g(t, 0.0), Ok(v) if v == 0.0))
    }
}
