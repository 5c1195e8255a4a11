//! The linear periodic problem `Lx = h` on `X_N`, with `(Lx)(t) = x(t+1) − A·x(t)`.
//!
//! [`LinearData`] precomputes everything the nonlinear layer needs: powers of
//! the companion matrix, the monodromy `A^N`, the resonance class, the kernel
//! projection `P`, the image-complement projection `Q` and the generalized
//! inverse `M_p = (L restricted to Ker P)^{-1}`.
//!
//! Orbits of the homogeneous and adjoint recurrences are propagated in
//! whichever time direction does not amplify rounding error: forward when the
//! companion matrix is no more expanding than its inverse, backward otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{projector, Mat2, Svd2, Vec2};
use crate::problem::Problem;
use crate::scalar::Scalar;

/// An `N`-periodic sequence of vectors in R², indexed `t = 0..N-1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct PeriodicSequence<T> {
    values: Vec<Vec2<T>>,
}

impl<T: Scalar> PeriodicSequence<T> {
    /// Panics on an empty vector; a period is at least one step.
    pub fn new(values: Vec<Vec2<T>>) -> Self {
        assert!(!values.is_empty(), "periodic sequence needs at least one value");
        PeriodicSequence { values }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Vec2::zero(); n])
    }

    pub fn constant(n: usize, v: Vec2<T>) -> Self {
        Self::new(vec![v; n])
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Vec2<T>) -> Self {
        Self::new((0..n).map(f).collect())
    }

    /// The companion state `x(t) = (y(t), y(t+1))` of a scalar periodic sequence.
    pub fn from_scalar(y: &[T]) -> Self {
        let n = y.len();
        Self::from_fn(n, |t| Vec2(y[t], y[(t + 1) % n]))
    }

    /// Inverse of [`Self::flatten`].
    pub fn from_flat(flat: &[T]) -> Self {
        assert!(flat.len().is_multiple_of(2) && !flat.is_empty());
        Self::new(flat.chunks_exact(2).map(|c| Vec2(c[0], c[1])).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Value at any `t ≥ 0`, wrapping modulo the period.
    #[inline]
    pub fn at(&self, t: usize) -> Vec2<T> {
        self.values[t % self.values.len()]
    }

    #[inline]
    pub fn values(&self) -> &[Vec2<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Vec2<T>] {
        &mut self.values
    }

    /// `sup_t |x(t)|` with the Euclidean norm on R².
    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }

    /// `Σ_t ⟨x(t), y(t)⟩`
    pub fn dot(&self, o: &Self) -> T {
        self.values.iter().zip(&o.values).fold(T::zero(), |s, (a, b)| s + a.dot(*b))
    }

    pub fn first_components(&self) -> Vec<T> {
        self.values.iter().map(|v| v.0).collect()
    }

    pub fn flatten(&self) -> Vec<T> {
        self.values.iter().flat_map(|v| [v.0, v.1]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.values.iter().map(|v| v.scale(k)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.len(), o.len());
        Self::new(self.values.iter().zip(&o.values).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.len(), o.len());
        Self::new(self.values.iter().zip(&o.values).map(|(a, b)| *a - *b).collect())
    }

    /// `sup_t |x(t) − y(t)|`
    pub fn dist(&self, o: &Self) -> T {
        self.sub(o).sup_norm()
    }
}

/// Dimension of `Ker(L)` together with bases of the kernel and of the
/// periodic adjoint solutions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResonanceClass<T> {
    pub dim: usize,
    pub kernel_basis: Vec<PeriodicSequence<T>>,
    pub adjoint_basis: Vec<PeriodicSequence<T>>,
    /// `arccos(−b/2)` when `c = 1` and `|b| < 2`.
    pub theta: Option<T>,
    /// `r` with `N·θ = 2π·r`, set in the two-dimensional case.
    pub r_int: Option<i64>,
}

/// Result of [`LinearData::norm_bound_mp_iq`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormBound<T> {
    pub lower: T,
    pub upper: T,
}

/// `A = [[0, 1], [−c, −b]]`.
pub fn companion<T: Scalar>(b: T, c: T) -> Result<Mat2<T>> {
    if c == T::zero() {
        return Err(Error::InvalidProblem("c must be nonzero".into()));
    }
    Ok(Mat2::new(T::zero(), T::one(), -c, -b))
}

/// Fundamental matrix `Φ(t)` of `x(t+1) = A·x(t)` when `c = 1`, `b = −2cos θ`.
pub fn trig_phi<T: Scalar>(theta: T, t: usize) -> Mat2<T> {
    let tt = T::from_usize_lossy(t);
    let (s0, c0) = (theta * tt).sin_cos();
    let (s1, c1) = (theta * (tt + T::one())).sin_cos();
    Mat2::new(c0, s0, c1, s1)
}

/// Fundamental matrix `Γ(t)` of the adjoint `x(t+1) = A^{-T}·x(t)` when `c = 1`.
pub fn trig_gamma<T: Scalar>(theta: T, t: usize) -> Mat2<T> {
    let tt = T::from_usize_lossy(t);
    let (s0, c0) = (theta * tt).sin_cos();
    let (s1, c1) = (theta * (tt - T::one())).sin_cos();
    Mat2::new(-c0, -s0, c1, s1)
}

/// `dim Ker(I − A^N) = 2 − rank(I − A^N)`.
///
/// For distinct eigenvalues the rank is read off in the eigenbasis, where
/// `I − A^N = diag(1 − λᵢ^N)` and each entry counts as zero when
/// `|1 − λᵢ^N| ≤ rank_rtol · max(1, |λᵢ|^N)`. A singular-value test on the
/// matrix itself would misread saddles, whose `σmax` grows like `|λ|^N`.
/// A companion matrix with a double eigenvalue is a Jordan block; there
/// `I − A^N` is well scaled and its singular values decide.
fn kernel_dim<T: Scalar>(a: &Mat2<T>, n: usize, closing: &Svd2<T>) -> usize {
    let tol = T::rank_rtol();
    let one = T::one();
    let half_tr = a.trace() / T::lit(2.0);
    let det = a.det();
    let disc = half_tr * half_tr - det;
    let nn = T::from_usize_lossy(n);
    if disc.abs() <= tol.sqrt() * one.max(half_tr * half_tr) {
        return 2 - closing.rank();
    }
    let resonant = |re: T, im: T| {
        // λ^N in polar form.
        let m = re.hypot(im).powf(nn);
        let ang = im.atan2(re) * nn;
        let (s, c) = ang.sin_cos();
        (one - m * c).hypot(m * s) <= tol * one.max(m)
    };
    if disc < T::zero() {
        if resonant(half_tr, (-disc).sqrt()) {
            2
        } else {
            0
        }
    } else {
        let root = disc.sqrt();
        let l1 = if half_tr >= T::zero() { half_tr + root } else { half_tr - root };
        let l2 = det / l1;
        usize::from(resonant(l1, T::zero())) + usize::from(resonant(l2, T::zero()))
    }
}

fn real_saddle<T: Scalar>(a: &Mat2<T>) -> Option<(T, T)> {
    let half_tr = a.trace() / T::lit(2.0);
    let disc = half_tr * half_tr - a.det();
    if disc <= T::zero() {
        return None;
    }
    let l1 = if half_tr >= T::zero() {
        half_tr + disc.sqrt()
    } else {
        half_tr - disc.sqrt()
    };
    let l2 = a.det() / l1;
    let (big, small) = if l1.abs() >= l2.abs() { (l1, l2) } else { (l2, l1) };
    (big.abs() > T::one() && small.abs() < T::one()).then_some((big, small))
}

/// Precomputed linear data for a fixed `(b, c, N)`.
#[derive(Clone, Debug)]
pub struct LinearData<T> {
    pub b: T,
    pub c: T,
    pub n: usize,
    pub a: Mat2<T>,
    pub a_inv: Mat2<T>,
    /// `A^t` for `t = 0..=N`.
    pub a_pows: Vec<Mat2<T>>,
    /// `A^N`
    pub monodromy: Mat2<T>,
    /// Orthogonal projector onto `Ker(I − A^N)`.
    pub v: Mat2<T>,
    /// `W(t)`: columns are the adjoint basis sequences evaluated at `t+1`.
    pub w_table: Vec<Mat2<T>>,
    /// Pseudo-inverse of `Σ_t W(t)ᵀ W(t)`.
    pub gram_inv: Mat2<T>,
    pub class: ResonanceClass<T>,
    forward: bool,
    null_orbits: Vec<(Vec2<T>, PeriodicSequence<T>)>,
    /// Pseudo-inverse of `I − A^N` (forward) or `A^{−N} − I` (backward).
    closing_pinv: Mat2<T>,
    /// Real eigenvalues `(λ_out, λ_in)` with `|λ_out| > 1 > |λ_in|` of a nonresonant saddle.
    saddle: Option<(T, T)>,
}

impl<T: Scalar> LinearData<T> {
    pub fn new(b: T, c: T, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidProblem(format!("period N must be at least 2, got {n}")));
        }
        if !b.is_finite() || !c.is_finite() {
            return Err(Error::InvalidProblem("b and c must be finite".into()));
        }
        let a = companion(b, c)?;
        let a_inv = a
            .inverse()
            .ok_or_else(|| Error::InvalidProblem("companion matrix is singular".into()))?;
        let mut a_pows = Vec::with_capacity(n + 1);
        a_pows.push(Mat2::identity());
        for t in 0..n {
            a_pows.push(a_pows[t] * a);
        }
        let monodromy = a_pows[n];
        let closing = Mat2::identity() - monodromy;
        let svd = closing.svd();
        let dim = kernel_dim(&a, n, &svd);
        let kernel_vecs = svd.trailing_right(dim);
        let adjoint_vecs = svd.trailing_left(dim);
        let v = projector(&kernel_vecs);

        let (rho, rho_inv) = (a.eigen_moduli().0, a_inv.eigen_moduli().0);
        let forward = rho <= rho_inv;
        let closing_pinv = if forward {
            svd.pinv_truncated(2 - dim)
        } else {
            (a_inv.pow(n as u32) - Mat2::identity()).svd().pinv_truncated(2 - dim)
        };

        let mut ld = LinearData {
            b,
            c,
            n,
            a,
            a_inv,
            a_pows,
            monodromy,
            v,
            w_table: Vec::new(),
            gram_inv: Mat2::zero(),
            class: ResonanceClass {
                dim,
                kernel_basis: vec![],
                adjoint_basis: vec![],
                theta: None,
                r_int: None,
            },
            forward,
            null_orbits: Vec::new(),
            closing_pinv,
            saddle: if dim == 0 { real_saddle(&a) } else { None },
        };
        ld.null_orbits = kernel_vecs.iter().map(|&k| (k, ld.kernel_orbit(k))).collect();
        ld.class = ld.resolve_class(dim, &adjoint_vecs);

        ld.w_table = (0..n)
            .map(|t| {
                let col = |j: usize| ld.class.adjoint_basis.get(j).map_or(Vec2::zero(), |z| z.at(t + 1));
                Mat2::from_cols(col(0), col(1))
            })
            .collect();
        let gram = ld.w_table.iter().fold(Mat2::zero(), |g, w| g + w.transpose() * *w);
        ld.gram_inv = gram.svd().pinv_truncated(dim);
        Ok(ld)
    }

    pub fn from_problem(p: &Problem) -> Result<LinearData<f64>> {
        LinearData::<f64>::new(p.b, p.c, p.n)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.class.dim
    }

    fn resolve_class(&self, dim: usize, adjoint_vecs: &[Vec2<T>]) -> ResonanceClass<T> {
        let (b, c, n) = (self.b, self.c, self.n);
        let one = T::one();
        let two = T::lit(2.0);
        let theta = ((c - one).abs() <= T::rank_rtol() && b.abs() < two).then(|| (-b / two).acos());
        let r_int = match (dim, theta) {
            (2, Some(th)) => (T::from_usize_lossy(n) * th / T::TAU()).round().to_i64(),
            _ => None,
        };
        let canonical_1d = dim == 1 && (one + b + c).abs() <= T::rank_rtol() * (one + b.abs() + c.abs());

        let (kernel_basis, adjoint_basis) = if canonical_1d {
            (
                vec![PeriodicSequence::constant(n, Vec2(one, one))],
                vec![PeriodicSequence::constant(n, Vec2(-c, one))],
            )
        } else if let (2, Some(r)) = (dim, r_int) {
            // N·θ = 2π·r exactly for the tables, so they close up after N steps.
            let th = T::TAU() * T::from_i64(r).unwrap_or_else(T::zero) / T::from_usize_lossy(n);
            let phi: Vec<_> = (0..n).map(|t| trig_phi(th, t)).collect();
            let gam: Vec<_> = (0..n).map(|t| trig_gamma(th, t)).collect();
            let cols = |m: &[Mat2<T>], j| PeriodicSequence::from_fn(n, |t| m[t].col(j));
            (vec![cols(&phi, 0), cols(&phi, 1)], vec![cols(&gam, 0), cols(&gam, 1)])
        } else {
            (
                self.null_orbits.iter().map(|(_, o)| o.clone()).collect(),
                adjoint_vecs.iter().map(|&w| self.adjoint_orbit(w)).collect(),
            )
        };
        ResonanceClass {
            dim,
            kernel_basis,
            adjoint_basis,
            theta,
            r_int,
        }
    }

    /// `t ↦ A^t·v` for `v ∈ Ker(I − A^N)`.
    fn kernel_orbit(&self, v: Vec2<T>) -> PeriodicSequence<T> {
        let n = self.n;
        let mut vals = vec![Vec2::zero(); n];
        if self.forward {
            let mut z = v;
            for val in vals.iter_mut() {
                *val = z;
                z = self.a * z;
            }
        } else {
            vals[0] = v;
            let mut z = v;
            for t in (1..n).rev() {
                z = self.a_inv * z;
                vals[t] = z;
            }
        }
        PeriodicSequence::new(vals)
    }

    /// `t ↦ (A^{-T})^t·w` for `w ∈ Ker((I − A^N)ᵀ)`.
    fn adjoint_orbit(&self, w: Vec2<T>) -> PeriodicSequence<T> {
        let n = self.n;
        let step = self.a_inv.transpose();
        let back = self.a.transpose();
        let mut vals = vec![Vec2::zero(); n];
        if !self.forward {
            let mut z = w;
            for val in vals.iter_mut() {
                *val = z;
                z = step * z;
            }
        } else {
            vals[0] = w;
            let mut z = w;
            for t in (1..n).rev() {
                z = back * z;
                vals[t] = z;
            }
        }
        PeriodicSequence::new(vals)
    }

    /// `Γ(t) = (A^{-T})^t`, the adjoint fundamental matrix with `Γ(0) = I`.
    pub fn gamma_iterated(&self, t: usize) -> Mat2<T> {
        self.a_inv.transpose().pow(t as u32)
    }

    fn check_len(&self, x: &PeriodicSequence<T>) {
        assert_eq!(x.len(), self.n, "sequence length must equal the period");
    }

    /// `(Lx)(t) = x(t+1) − A·x(t)`
    pub fn apply_l(&self, x: &PeriodicSequence<T>) -> PeriodicSequence<T> {
        self.check_len(x);
        PeriodicSequence::from_fn(self.n, |t| x.at(t + 1) - self.a * x.at(t))
    }

    fn pairing(&self, h: &PeriodicSequence<T>) -> Vec2<T> {
        self.w_table
            .iter()
            .zip(h.values())
            .fold(Vec2::zero(), |s, (w, hv)| s + w.transpose() * *hv)
    }

    /// `Σ_t ⟨z_j(t+1), h(t)⟩` for each adjoint basis sequence `z_j`.
    /// All zero (to tolerance) exactly when `h ∈ Im(L)`.
    pub fn image_test(&self, h: &PeriodicSequence<T>) -> Vec<T> {
        self.check_len(h);
        let s = self.pairing(h);
        [s.0, s.1].into_iter().take(self.dim()).collect()
    }

    pub fn in_image(&self, h: &PeriodicSequence<T>) -> bool {
        let tol = T::zero_tol() * (T::one() + h.sup_norm());
        self.image_test(h).iter().all(|v| v.abs() <= tol)
    }

    /// `(Px)(t) = A^t·V·x(0)`, a projection onto `Ker(L)`.
    pub fn proj_p(&self, x: &PeriodicSequence<T>) -> PeriodicSequence<T> {
        self.check_len(x);
        let x0 = x.at(0);
        let mut out = PeriodicSequence::zeros(self.n);
        for (k, orbit) in &self.null_orbits {
            let coef = k.dot(x0);
            for (o, z) in out.values_mut().iter_mut().zip(orbit.values()) {
                *o += z.scale(coef);
            }
        }
        out
    }

    /// Orthogonal projection (in `Σ_t⟨·,·⟩`) onto the span of the shifted
    /// adjoint solutions; `Ker(Q) = Im(L)`.
    pub fn proj_q(&self, h: &PeriodicSequence<T>) -> PeriodicSequence<T> {
        self.check_len(h);
        if self.dim() == 0 {
            return PeriodicSequence::zeros(self.n);
        }
        let coef = self.gram_inv * self.pairing(h);
        PeriodicSequence::from_fn(self.n, |t| self.w_table[t] * coef)
    }

    /// The unique `x` with `Lx = h` and `Px = 0`. Rejects `h ∉ Im(L)`.
    pub fn mp_solve(&self, h: &PeriodicSequence<T>) -> Result<PeriodicSequence<T>> {
        self.check_len(h);
        if !self.in_image(h) {
            let worst = self.image_test(h).iter().fold(T::zero(), |m, v| m.max(v.abs()));
            return Err(Error::NotInImage {
                pairing: worst.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(self.mp_solve_unchecked(h))
    }

    /// Variation of parameters without the image check. For `h ∉ Im(L)` the
    /// result solves `Lx = h` only up to the component of `h` outside the image.
    pub fn mp_solve_unchecked(&self, h: &PeriodicSequence<T>) -> PeriodicSequence<T> {
        if let Some((l_out, l_in)) = self.saddle {
            return self.solve_saddle(h, l_out, l_in);
        }
        let n = self.n;
        let mut vals = vec![Vec2::zero(); n];
        if self.forward {
            // (I − A^N)·x(0) = Σ_i A^{N−1−i}·h(i)
            let s = h.values().iter().fold(Vec2::zero(), |z, hv| self.a * z + *hv);
            vals[0] = self.closing_pinv * s;
            for t in 0..n - 1 {
                vals[t + 1] = self.a * vals[t] + h.at(t);
            }
        } else {
            // (A^{−N} − I)·x(0) = Σ_i A^{−(i+1)}·h(i)
            let s = h.values().iter().rev().fold(Vec2::zero(), |z, hv| self.a_inv * (*hv + z));
            vals[0] = self.closing_pinv * s;
            let mut next = vals[0];
            for t in (1..n).rev() {
                next = self.a_inv * (next - h.at(t));
                vals[t] = next;
            }
        }
        PeriodicSequence::new(vals)
    }

    /// Periodic solution of `x(t+1) = A·x(t) + h(t)` mode by mode. The
    /// eigenvectors of a companion matrix are `(1, λ)`; the contracting mode
    /// is propagated forward and the expanding mode backward.
    fn solve_saddle(&self, h: &PeriodicSequence<T>, l_out: T, l_in: T) -> PeriodicSequence<T> {
        let n = self.n;
        let s = Mat2::new(T::one(), T::one(), l_out, l_in);
        let s_inv = s.inverse().expect("distinct eigenvalues");
        let coords: Vec<Vec2<T>> = h.values().iter().map(|v| s_inv * *v).collect();
        let mut out = vec![Vec2::zero(); n];
        // Contracting mode: u(0)·(1 − λ^N) = Σ_i λ^{N−1−i}·h(i), then forward.
        let sum_in = coords.iter().fold(T::zero(), |z, c| l_in * z + c.1);
        let mut u = sum_in / (T::one() - l_in.powi(n as i32));
        for (t, o) in out.iter_mut().enumerate() {
            o.1 = u;
            u = l_in * u + coords[t].1;
        }
        // Expanding mode: u(0)·(λ^{−N} − 1) = Σ_i λ^{−(i+1)}·h(i), then backward.
        let inv = T::one() / l_out;
        let sum_out = coords.iter().rev().fold(T::zero(), |z, c| inv * (c.0 + z));
        let mut u = sum_out / (inv.powi(n as i32) - T::one());
        out[0].0 = u;
        for t in (1..n).rev() {
            u = inv * (u - coords[t].0);
            out[t].0 = u;
        }
        PeriodicSequence::new(out.into_iter().map(|c| s * c).collect())
    }

    /// `M_p(I − Q)·h`
    pub fn mp_iq(&self, h: &PeriodicSequence<T>) -> PeriodicSequence<T> {
        self.mp_solve_unchecked(&h.sub(&self.proj_q(h)))
    }

    /// `B[t][i]`: the 2×2 block of `h ↦ M_p(I−Q)h` from input step `i` to output step `t`.
    pub fn mp_iq_blocks(&self) -> Vec<Vec<Mat2<T>>> {
        let n = self.n;
        let mut blocks = vec![vec![Mat2::zero(); n]; n];
        for i in 0..n {
            let mut cols = [PeriodicSequence::zeros(n), PeriodicSequence::zeros(n)];
            for (k, col) in cols.iter_mut().enumerate() {
                let mut e = PeriodicSequence::zeros(n);
                e.values_mut()[i] = if k == 0 {
                    Vec2(T::one(), T::zero())
                } else {
                    Vec2(T::zero(), T::one())
                };
                *col = self.mp_iq(&e);
            }
            for (t, row) in blocks.iter_mut().enumerate() {
                row[i] = Mat2::from_cols(cols[0].at(t), cols[1].at(t));
            }
        }
        blocks
    }

    /// Bounds on the operator norm of `M_p(I−Q)` induced by the sup-of-Euclidean norm.
    ///
    /// `upper = max_t Σ_i σmax(B[t][i])` is sound; `lower` is the best value of
    /// `‖M_p(I−Q)h‖` over `mc_samples` random inputs with `|h(i)| = 1`.
    pub fn norm_bound_mp_iq(&self, mc_samples: usize, seed: u64) -> NormBound<T> {
        norm_bound_from_blocks(&self.mp_iq_blocks(), mc_samples, seed)
    }
}

/// Norm bounds for a block operator `(Bh)(t) = Σ_i B[t][i]·h(i)` on sup-of-Euclidean sequences.
pub fn norm_bound_from_blocks<T: Scalar>(blocks: &[Vec<Mat2<T>>], mc_samples: usize, seed: u64) -> NormBound<T> {
    let upper = blocks
        .iter()
        .map(|row| row.iter().fold(T::zero(), |s, b| s + b.svals().0))
        .fold(T::zero(), T::max);
    let width = blocks.first().map_or(0, Vec::len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower = T::zero();
    let mut h = vec![Vec2::zero(); width];
    for _ in 0..mc_samples.max(1) {
        for hv in h.iter_mut() {
            let ang: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            *hv = Vec2(T::lit(ang.cos()), T::lit(ang.sin()));
        }
        let out = blocks
            .iter()
            .map(|row| row.iter().zip(&h).fold(Vec2::zero(), |s, (b, hv)| s + *b * *hv).norm())
            .fold(T::zero(), T::max);
        lower = lower.max(out);
    }
    NormBound {
        lower: lower.min(upper),
        upper,
    }
}

/// Resonance class of a problem's linear part.
pub fn classify(p: &Problem) -> Result<ResonanceClass<f64>> {
    Ok(LinearData::<f64>::from_problem(p)?.class)
}
