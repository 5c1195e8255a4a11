//! Floating-point abstraction shared by the linear machinery.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar type usable by [`crate::linalg`] and [`crate::linear`]: `f32` or `f64`.
pub trait Scalar: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Relative threshold below which a singular value counts as zero.
    fn rank_rtol() -> Self;

    /// Tolerance used for "is this pairing / residual zero" decisions.
    fn zero_tol() -> Self;

    /// Converts an `f64` literal. Every value used this way is representable.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal is representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize is representable")
    }
}

impl Scalar for f64 {
    #[inline]
    fn rank_rtol() -> f64 {
        1e-9
    }

    #[inline]
    fn zero_tol() -> f64 {
        1e-9
    }
}

impl Scalar for f32 {
    #[inline]
    fn rank_rtol() -> f32 {
        1e-4
    }

    #[inline]
    fn zero_tol() -> f32 {
        1e-4
    }
}
