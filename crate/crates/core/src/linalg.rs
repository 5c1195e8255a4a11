//! 2×2 real matrix and vector arithmetic.
//!
//! The SVD uses the closed-form rotation/scale/rotation factorisation of a
//! 2×2 matrix, so every routine here is branch-light and allocation-free.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// A column vector in R².
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2<T>(pub T, pub T);

impl<T: Scalar> Vec2<T> {
    #[inline]
    pub fn new(a: T, b: T) -> Self {
        Vec2(a, b)
    }

    #[inline]
    pub fn zero() -> Self {
        Vec2(T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.0 * o.0 + self.1 * o.1
    }

    /// Euclidean norm.
    #[inline]
    pub fn norm(self) -> T {
        self.0.hypot(self.1)
    }

    #[inline]
    pub fn scale(self, k: T) -> Self {
        Vec2(self.0 * k, self.1 * k)
    }

    /// `self · oᵀ`
    #[inline]
    pub fn outer(self, o: Self) -> Mat2<T> {
        Mat2::new(self.0 * o.0, self.0 * o.1, self.1 * o.0, self.1 * o.1)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite() && self.1.is_finite()
    }

    #[inline]
    pub fn max_abs(self) -> T {
        self.0.abs().max(self.1.abs())
    }
}

impl<T: Scalar> Add for Vec2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Vec2(self.0 + o.0, self.1 + o.1)
    }
}

impl<T: Scalar> AddAssign for Vec2<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> Sub for Vec2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Vec2(self.0 - o.0, self.1 - o.1)
    }
}

impl<T: Scalar> SubAssign for Vec2<T> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Scalar> Neg for Vec2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Vec2(-self.0, -self.1)
    }
}

/// A 2×2 matrix, stored row-major.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Mat2<T> {
    pub m11: T,
    pub m12: T,
    pub m21: T,
    pub m22: T,
}

impl<T: Scalar> Mat2<T> {
    #[inline]
    pub fn new(m11: T, m12: T, m21: T, m22: T) -> Self {
        Mat2 { m11, m12, m21, m22 }
    }

    #[inline]
    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn diag(a: T, b: T) -> Self {
        Self::new(a, T::zero(), T::zero(), b)
    }

    /// Matrix with the given columns.
    #[inline]
    pub fn from_cols(c1: Vec2<T>, c2: Vec2<T>) -> Self {
        Self::new(c1.0, c2.0, c1.1, c2.1)
    }

    /// Counter-clockwise rotation by `angle`.
    #[inline]
    pub fn rotation(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, -s, s, c)
    }

    #[inline]
    pub fn col(&self, j: usize) -> Vec2<T> {
        match j {
            0 => Vec2(self.m11, self.m21),
            1 => Vec2(self.m12, self.m22),
            _ => panic!("column index {j} out of range for a 2x2 matrix"),
        }
    }

    #[inline]
    pub fn transpose(&self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    #[inline]
    pub fn det(&self) -> T {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    #[inline]
    pub fn trace(&self) -> T {
        self.m11 + self.m22
    }

    /// Exact inverse, `None` when the determinant is zero.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == T::zero() || !d.is_finite() {
            return None;
        }
        Some(Self::new(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d))
    }

    #[inline]
    pub fn scale(&self, k: T) -> Self {
        Self::new(self.m11 * k, self.m12 * k, self.m21 * k, self.m22 * k)
    }

    #[inline]
    pub fn mul_vec(&self, v: Vec2<T>) -> Vec2<T> {
        Vec2(self.m11 * v.0 + self.m12 * v.1, self.m21 * v.0 + self.m22 * v.1)
    }

    /// Largest absolute entry.
    #[inline]
    pub fn max_abs(&self) -> T {
        self.m11.abs().max(self.m12.abs()).max(self.m21.abs()).max(self.m22.abs())
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }

    /// `A^t` by repeated multiplication; `A^0 = I`.
    pub fn pow(&self, t: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..t {
            acc = acc * *self;
        }
        acc
    }

    /// Magnitudes of the two eigenvalues, larger first.
    pub fn eigen_moduli(&self) -> (T, T) {
        let half_tr = self.trace() / T::lit(2.0);
        let det = self.det();
        let disc = half_tr * half_tr - det;
        if disc < T::zero() {
            let m = det.abs().sqrt();
            (m, m)
        } else {
            let s = disc.sqrt();
            let (l1, l2) = ((half_tr + s).abs(), (half_tr - s).abs());
            (l1.max(l2), l1.min(l2))
        }
    }

    pub fn svd(&self) -> Svd2<T> {
        Svd2::new(self)
    }

    /// Singular values `(σmax, σmin)`.
    pub fn svals(&self) -> (T, T) {
        let s = self.svd().sigma;
        (s[0], s[1])
    }

    /// Moore–Penrose pseudo-inverse under the rank tolerance.
    pub fn pinv(&self) -> Self {
        self.svd().pinv()
    }

    pub fn rank(&self) -> usize {
        self.svd().rank()
    }
}

impl<T: Scalar> Mul for Mat2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Mat2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}

impl<T: Scalar> Mul<Vec2<T>> for Mat2<T> {
    type Output = Vec2<T>;
    #[inline]
    fn mul(self, v: Vec2<T>) -> Vec2<T> {
        self.mul_vec(v)
    }
}

impl<T: Scalar> Add for Mat2<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Mat2::new(self.m11 + o.m11, self.m12 + o.m12, self.m21 + o.m21, self.m22 + o.m22)
    }
}

impl<T: Scalar> AddAssign for Mat2<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Scalar> Sub for Mat2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Mat2::new(self.m11 - o.m11, self.m12 - o.m12, self.m21 - o.m21, self.m22 - o.m22)
    }
}

impl<T: Scalar> Neg for Mat2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

/// `A^t`. Free-function form of [`Mat2::pow`].
pub fn mat2_pow<T: Scalar>(a: &Mat2<T>, t: u32) -> Mat2<T> {
    a.pow(t)
}

/// Singular values `(σmax, σmin)` of `a`.
pub fn svals2<T: Scalar>(a: &Mat2<T>) -> (T, T) {
    a.svals()
}

/// Moore–Penrose pseudo-inverse of `a`.
pub fn pinv2<T: Scalar>(a: &Mat2<T>) -> Mat2<T> {
    a.pinv()
}

/// `A = U · diag(σ) · Vᵀ` with `U`, `V` orthogonal and `σ[0] ≥ σ[1] ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Svd2<T> {
    pub u: Mat2<T>,
    pub sigma: [T; 2],
    pub v: Mat2<T>,
}

impl<T: Scalar> Svd2<T> {
    pub fn new(a: &Mat2<T>) -> Self {
        let two = T::lit(2.0);
        let e = (a.m11 + a.m22) / two;
        let f = (a.m11 - a.m22) / two;
        let g = (a.m21 + a.m12) / two;
        let h = (a.m21 - a.m12) / two;
        let q = e.hypot(h);
        let r = f.hypot(g);
        let sx = q + r;
        let mut sy = q - r;
        let a1 = g.atan2(f);
        let a2 = h.atan2(e);
        // a = rot(phi) · diag(sx, sy) · rot(theta)
        let theta = (a2 - a1) / two;
        let phi = (a2 + a1) / two;
        let mut u = Mat2::rotation(phi);
        let v = Mat2::rotation(theta).transpose();
        if sy < T::zero() {
            sy = -sy;
            u.m12 = -u.m12;
            u.m22 = -u.m22;
        }
        Svd2 { u, sigma: [sx, sy], v }
    }

    /// Absolute zero threshold: `rank_rtol · max(1, σmax)`.
    #[inline]
    pub fn zero_threshold(&self) -> T {
        T::rank_rtol() * T::one().max(self.sigma[0])
    }

    #[inline]
    fn is_zero(&self, j: usize) -> bool {
        self.sigma[j] <= self.zero_threshold()
    }

    pub fn rank(&self) -> usize {
        (0..2).filter(|&j| !self.is_zero(j)).count()
    }

    pub fn pinv(&self) -> Mat2<T> {
        let inv = |j: usize| if self.is_zero(j) { T::zero() } else { T::one() / self.sigma[j] };
        self.v * Mat2::diag(inv(0), inv(1)) * self.u.transpose()
    }

    /// Pseudo-inverse keeping only the `rank` largest singular values.
    pub fn pinv_truncated(&self, rank: usize) -> Mat2<T> {
        let inv = |j: usize| {
            if j >= rank || self.sigma[j] == T::zero() {
                T::zero()
            } else {
                T::one() / self.sigma[j]
            }
        };
        self.v * Mat2::diag(inv(0), inv(1)) * self.u.transpose()
    }

    /// The `d` right singular vectors belonging to the smallest singular values.
    pub fn trailing_right(&self, d: usize) -> Vec<Vec2<T>> {
        (2 - d.min(2)..2).map(|j| self.v.col(j)).collect()
    }

    /// The `d` left singular vectors belonging to the smallest singular values.
    pub fn trailing_left(&self, d: usize) -> Vec<Vec2<T>> {
        (2 - d.min(2)..2).map(|j| self.u.col(j)).collect()
    }

    /// Orthonormal basis of `Ker(A)` (right singular vectors with zero σ).
    pub fn null_right(&self) -> Vec<Vec2<T>> {
        (0..2).filter(|&j| self.is_zero(j)).map(|j| self.v.col(j)).collect()
    }

    /// Orthonormal basis of `Ker(Aᵀ)` (left singular vectors with zero σ).
    pub fn null_left(&self) -> Vec<Vec2<T>> {
        (0..2).filter(|&j| self.is_zero(j)).map(|j| self.u.col(j)).collect()
    }

    pub fn reconstruct(&self) -> Mat2<T> {
        self.u * Mat2::diag(self.sigma[0], self.sigma[1]) * self.v.transpose()
    }
}

/// Orthogonal projector onto the span of an orthonormal family.
pub fn projector<T: Scalar>(basis: &[Vec2<T>]) -> Mat2<T> {
    basis.iter().fold(Mat2::zero(), |acc, u| acc + u.outer(*u))
}
