//! Periodic solutions of `y(t+2) + b·y(t+1) + c·y(t) = g(t, y(t))`.
//!
//! The linear machinery ([`linalg`], [`linear`]) is generic over the scalar
//! type; the nonlinear layers work in `f64`. Concrete aliases for both
//! precisions live at the crate root.

// `!(a < b)` is used on purpose so that NaN takes the failure branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expr;
pub mod hypotheses;
pub mod linalg;
pub mod linear;
pub mod oracle;
pub mod problem;
pub mod reduction;
pub mod scalar;

pub use error::{Error, Result};
pub use expr::{parse, Expr};
pub use hypotheses::{check_corollary, check_thm1, check_thm2, membership_u, CheckReport};
pub use linalg::{Mat2, Svd2, Vec2};
pub use linear::{classify, companion, LinearData, NormBound, PeriodicSequence, ResonanceClass};
pub use problem::Problem;
pub use reduction::{solve, BifurcationMap, SolveOptions, SolveReport};
pub use scalar::Scalar;

pub type Mat2d = Mat2<f64>;
pub type Mat2f = Mat2<f32>;
pub type Vec2d = Vec2<f64>;
pub type Vec2f = Vec2<f32>;
pub type SequenceD = PeriodicSequence<f64>;
pub type SequenceF = PeriodicSequence<f32>;
pub type LinearDataD = LinearData<f64>;
pub type LinearDataF = LinearData<f32>;
pub type ResonanceClassD = ResonanceClass<f64>;
