//! Nonlinear layer: the substitution operator `F`, the auxiliary fixed-point
//! equation `x = M_p(I−Q)F(kernel(α) + x)`, the bifurcation map in the kernel
//! coordinates `α`, and the three regime solvers.

use std::ops::AddAssign;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Vec2};
use crate::linear::{LinearData, PeriodicSequence};
use crate::oracle;
use crate::problem::Problem;

type Seq = PeriodicSequence<f64>;

const LAMBDA_FLOOR: f64 = 1.0 / 1024.0;
const FD_STEP: f64 = 1e-6;
/// A solution with `sup |y|` below this is treated as the trivial one.
const TRIVIAL_TOL: f64 = 1e-6;

/// `F(x)(t) = (0, g(t, x₁(t)))`
pub fn apply_f(p: &Problem, x: &Seq) -> Result<Seq> {
    let vals = x
        .values()
        .iter()
        .enumerate()
        .map(|(t, v)| Ok(Vec2(0.0, p.g(t, v.0)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Seq::new(vals))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Iterations {
    pub picard: usize,
    pub newton: usize,
    /// Bifurcation-map evaluations, bisection steps or seed Newton steps.
    pub outer: usize,
}

impl AddAssign for Iterations {
    fn add_assign(&mut self, o: Self) {
        self.picard += o.picard;
        self.newton += o.newton;
        self.outer += o.outer;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedPoint {
    pub x: Seq,
    /// `‖T(x) − x‖`
    pub residual: f64,
    pub iterations: Iterations,
}

/// Solves `x = T(x)` by damped Picard iteration, falling back to
/// finite-difference Newton on `T(x) − x` when the iteration stalls.
///
/// `observe` sees every value `T(x)` computed along the way.
pub fn fixed_point(
    map: &dyn Fn(&Seq) -> Result<Seq>,
    x0: Seq,
    tol: f64,
    max_iter: usize,
    what: &'static str,
    observe: &mut dyn FnMut(&Seq),
) -> Result<FixedPoint> {
    let mut iterations = Iterations::default();
    let mut x = x0;
    let mut tx = map(&x)?;
    observe(&tx);
    let mut res = tx.dist(&x);
    let mut lambda = 1.0;
    let mut slow = 0;
    while res > tol && iterations.picard < max_iter {
        iterations.picard += 1;
        let cand = x.scale(1.0 - lambda).add(&tx.scale(lambda));
        let accepted = match map(&cand) {
            Ok(tc) => {
                observe(&tc);
                let rc = tc.dist(&cand);
                if rc < res {
                    slow = if rc > 0.9 * res { slow + 1 } else { 0 };
                    (x, tx, res) = (cand, tc, rc);
                    true
                } else {
                    false
                }
            }
            Err(Error::Eval(_)) => false,
            Err(e) => return Err(e),
        };
        if accepted {
            lambda = (2.0 * lambda).min(1.0);
            if slow >= 10 {
                break;
            }
        } else {
            lambda *= 0.5;
            if lambda < LAMBDA_FLOOR {
                break;
            }
        }
    }
    if res <= tol {
        return Ok(FixedPoint {
            x,
            residual: res,
            iterations,
        });
    }
    let mut out = newton_fixed_point(map, x, res, tol, max_iter.min(100), what, observe)?;
    out.iterations.picard += iterations.picard;
    Ok(out)
}

fn newton_fixed_point(
    map: &dyn Fn(&Seq) -> Result<Seq>,
    x0: Seq,
    res0: f64,
    tol: f64,
    max_iter: usize,
    what: &'static str,
    observe: &mut dyn FnMut(&Seq),
) -> Result<FixedPoint> {
    let fail = |it, residual, best: &Seq| Error::NonConvergence {
        what,
        iterations: it,
        residual,
        best: Some(best.flatten()),
    };
    let resid = |x: &Seq, observe: &mut dyn FnMut(&Seq)| -> Result<Vec<f64>> {
        let tx = map(x)?;
        observe(&tx);
        Ok(tx.sub(x).flatten())
    };
    let mut x = x0;
    let mut g = resid(&x, observe)?;
    let mut res = res0;
    let dim = g.len();
    for it in 0..max_iter {
        let flat = x.flatten();
        let mut jac = DMatrix::zeros(dim, dim);
        let mut probe = flat.clone();
        for i in 0..dim {
            let h = FD_STEP * (1.0 + flat[i].abs());
            probe[i] = flat[i] + h;
            let gp = resid(&Seq::from_flat(&probe), observe)?;
            probe[i] = flat[i] - h;
            let gm = resid(&Seq::from_flat(&probe), observe)?;
            probe[i] = flat[i];
            for k in 0..dim {
                jac[(k, i)] = (gp[k] - gm[k]) / (2.0 * h);
            }
        }
        let Some(step) = jac.lu().solve(&DVector::from_column_slice(&g)) else {
            return Err(fail(it, res, &x));
        };
        let g2: f64 = g.iter().map(|v| v * v).sum();
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = flat.iter().zip(step.iter()).map(|(a, d)| a - lambda * d).collect();
            let trial = Seq::from_flat(&trial);
            if let Ok(gt) = resid(&trial, observe) {
                if gt.iter().map(|v| v * v).sum::<f64>() <= (1.0 - 1e-4 * lambda) * g2 {
                    x = trial;
                    g = gt;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-10 {
                return Err(fail(it, res, &x));
            }
        }
        res = g.chunks_exact(2).fold(0.0, |m, c| m.max(c[0].hypot(c[1])));
        if res <= tol {
            let iterations = Iterations {
                newton: it + 1,
                ..Iterations::default()
            };
            return Ok(FixedPoint {
                x,
                residual: res,
                iterations,
            });
        }
    }
    Err(fail(max_iter, res, &x))
}

/// The reduced problem in kernel coordinates for a resonant instance.
#[derive(Clone, Copy, Debug)]
pub struct BifurcationMap<'a> {
    pub problem: &'a Problem,
    pub linear: &'a LinearData<f64>,
    pub dim: usize,
    pub inner_tol: f64,
    pub inner_max_iter: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuxSolution {
    pub x: Seq,
    pub residual: f64,
    pub iterations: Iterations,
}

impl<'a> BifurcationMap<'a> {
    pub fn new(problem: &'a Problem, linear: &'a LinearData<f64>) -> Result<Self> {
        if (problem.b, problem.c, problem.n) != (linear.b, linear.c, linear.n) {
            return Err(Error::Precondition("linear data does not match the problem".into()));
        }
        if linear.dim() == 0 {
            return Err(Error::Precondition("bifurcation map needs a nontrivial kernel".into()));
        }
        Ok(BifurcationMap {
            problem,
            linear,
            dim: linear.dim(),
            inner_tol: 1e-12,
            inner_max_iter: 500,
        })
    }

    /// `Σ_j α_j·k_j` over the kernel basis.
    pub fn kernel(&self, alpha: &[f64]) -> Seq {
        assert_eq!(alpha.len(), self.dim, "expected {} kernel coordinates", self.dim);
        let mut out = Seq::zeros(self.linear.n);
        for (a, k) in alpha.iter().zip(&self.linear.class.kernel_basis) {
            out = out.add(&k.scale(*a));
        }
        out
    }

    /// `p(α, x) = M_p(I−Q)F(kernel(α) + x)`
    pub fn aux_map(&self, alpha: &[f64], x: &Seq) -> Result<Seq> {
        Ok(self.linear.mp_iq(&apply_f(self.problem, &self.kernel(alpha).add(x))?))
    }

    /// Fixed point `x* ∈ Ker(P)` of `x ↦ p(α, x)`, started from zero.
    pub fn aux_solve(&self, alpha: &[f64]) -> Result<AuxSolution> {
        self.aux_solve_observed(alpha, &mut |_| {})
    }

    /// As [`Self::aux_solve`], passing every computed `p(α, x)` to `observe`.
    pub fn aux_solve_observed(&self, alpha: &[f64], observe: &mut dyn FnMut(&Seq)) -> Result<AuxSolution> {
        let map = |x: &Seq| self.aux_map(alpha, x);
        let fp = fixed_point(
            &map,
            Seq::zeros(self.linear.n),
            self.inner_tol,
            self.inner_max_iter,
            "auxiliary equation",
            observe,
        )?;
        Ok(AuxSolution {
            x: fp.x,
            residual: fp.residual,
            iterations: fp.iterations,
        })
    }

    /// Adjoint pairings of `F(kernel(α) + x)`.
    pub fn value_at(&self, alpha: &[f64], x: &Seq) -> Result<Vec<f64>> {
        Ok(self.linear.image_test(&apply_f(self.problem, &self.kernel(alpha).add(x))?))
    }

    pub fn bifurcation_value(&self, alpha: &[f64]) -> Result<Vec<f64>> {
        Ok(self.evaluate(alpha)?.0)
    }

    /// The value together with the auxiliary solution it was computed from.
    pub fn evaluate(&self, alpha: &[f64]) -> Result<(Vec<f64>, AuxSolution)> {
        let aux = self.aux_solve(alpha)?;
        Ok((self.value_at(alpha, &aux.x)?, aux))
    }
}

/// A continuous map R² → R², for degree computations.
pub trait PlanarMap {
    fn eval(&self, alpha: [f64; 2]) -> Result<[f64; 2]>;
}

impl PlanarMap for BifurcationMap<'_> {
    fn eval(&self, alpha: [f64; 2]) -> Result<[f64; 2]> {
        if self.dim != 2 {
            return Err(Error::Precondition(format!(
                "planar map needs a 2-dimensional kernel, got {}",
                self.dim
            )));
        }
        let v = self.bifurcation_value(&alpha)?;
        Ok([v[0], v[1]])
    }
}

/// Adapts a closure to [`PlanarMap`].
pub struct FnMap<F>(pub F);

impl<F: Fn([f64; 2]) -> Result<[f64; 2]>> PlanarMap for FnMap<F> {
    fn eval(&self, alpha: [f64; 2]) -> Result<[f64; 2]> {
        (self.0)(alpha)
    }
}

/// Winding number of `m` around the origin along the circle `|α| = radius`.
///
/// Arcs are bisected until consecutive image points subtend less than π/2.
pub fn winding_number<M: PlanarMap + ?Sized>(m: &M, radius: f64, samples: usize) -> Result<i64> {
    if !(radius > 0.0) || samples < 8 {
        return Err(Error::Precondition("winding number needs radius > 0 and at least 8 samples".into()));
    }
    let at = |phi: f64| m.eval([radius * phi.cos(), radius * phi.sin()]);
    let step = std::f64::consts::TAU / samples as f64;
    let initial = (0..samples).map(|j| at(step * j as f64)).collect::<Result<Vec<_>>>()?;
    let scale = initial.iter().fold(0.0f64, |s, v| s.max(v[0].hypot(v[1])));
    let floor = 1e-8 * scale;
    let check = |v: [f64; 2]| {
        if v[0].hypot(v[1]) <= floor || !(v[0].is_finite() && v[1].is_finite()) {
            Err(Error::DegreeUndefined { radius })
        } else {
            Ok(v)
        }
    };
    for v in &initial {
        check(*v)?;
    }
    let angle = |a: [f64; 2], b: [f64; 2]| (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
    let mut total = 0.0;
    for j in 0..samples {
        // Depth-first refinement of the arc [φ_j, φ_j + step].
        let mut stack = vec![(step * j as f64, step, initial[j], initial[(j + 1) % samples], 0u32)];
        while let Some((phi, width, va, vb, depth)) = stack.pop() {
            let da = angle(va, vb);
            if da.abs() < std::f64::consts::FRAC_PI_2 {
                total += da;
                continue;
            }
            if depth >= 30 {
                return Err(Error::DegreeUndefined { radius });
            }
            let half = 0.5 * width;
            let vm = check(at(phi + half)?)?;
            stack.push((phi + half, half, vm, vb, depth + 1));
            stack.push((phi, half, va, vm, depth + 1));
        }
    }
    Ok((total / std::f64::consts::TAU).round() as i64)
}

/// Outcome of a solve. `residual_sup` and `oracle_verified` are refreshed by
/// [`oracle::certify`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub solution: Seq,
    pub y: Vec<f64>,
    pub residual_sup: f64,
    pub regime: usize,
    pub alpha: Vec<f64>,
    pub winding: Option<i64>,
    pub oracle_verified: bool,
    pub iterations: Iterations,
    pub nontrivial_root: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LsResiduals {
    /// `‖x − Px − M_p(I−Q)F(x)‖`
    pub auxiliary: f64,
    /// `‖QF(x)‖`
    pub bifurcation: f64,
}

/// Residuals of both reduced equations at `x`.
pub fn ls_residuals(ld: &LinearData<f64>, p: &Problem, x: &Seq) -> Result<LsResiduals> {
    let fx = apply_f(p, x)?;
    let aux = x.sub(&ld.proj_p(x)).sub(&ld.mp_iq(&fx)).sup_norm();
    Ok(LsResiduals {
        auxiliary: aux,
        bifurcation: ld.proj_q(&fx).sup_norm(),
    })
}

struct Draft {
    y: Vec<f64>,
    regime: usize,
    alpha: Vec<f64>,
    iterations: Iterations,
    notes: Vec<String>,
}

/// Polishes with the oracle's Newton when needed and enforces `residual ≤ tol`.
fn finalize(p: &Problem, mut d: Draft, tol: f64) -> Result<SolveReport> {
    let mut rs = oracle::residual_sup(p, &d.y)?;
    let target = tol.min(oracle::NEWTON_TOL);
    if rs > target {
        let polished = match oracle::newton_solve(p, &d.y, target, 20) {
            Ok(out) => Some((out.y, out.residual, out.iterations)),
            Err(Error::NonConvergence {
                best: Some(y), iterations, ..
            }) => {
                let r = oracle::residual_sup(p, &y)?;
                Some((y, r, iterations))
            }
            Err(_) => None,
        };
        if let Some((y, r, its)) = polished {
            if r < rs {
                d.notes.push(format!("polished by oracle Newton: residual {rs:.3e} -> {r:.3e}"));
                d.y = y;
                rs = r;
                d.iterations.newton += its;
            }
        }
    }
    if !(rs <= tol) {
        return Err(Error::NonConvergence {
            what: "solution",
            iterations: d.iterations.outer,
            residual: rs,
            best: Some(d.y),
        });
    }
    Ok(SolveReport {
        solution: Seq::from_scalar(&d.y),
        y: d.y,
        residual_sup: rs,
        regime: d.regime,
        alpha: d.alpha,
        winding: None,
        oracle_verified: false,
        iterations: d.iterations,
        nontrivial_root: None,
        notes: d.notes,
    })
}

fn linear_for(p: &Problem, dim: usize) -> Result<LinearData<f64>> {
    let ld = LinearData::<f64>::from_problem(p)?;
    if ld.dim() != dim {
        return Err(Error::Precondition(format!(
            "kernel dimension is {}, solver expects {dim}",
            ld.dim()
        )));
    }
    Ok(ld)
}

/// Fixed point of `L⁻¹F` for a nonresonant instance.
pub fn solve_nonresonant(p: &Problem, tol: f64, max_iter: usize) -> Result<SolveReport> {
    let ld = linear_for(p, 0)?;
    let map = |x: &Seq| Ok(ld.mp_solve_unchecked(&apply_f(p, x)?));
    let fp_tol = tol / (10.0 * (1.0 + p.b.abs() + p.c.abs()));
    let fp = fixed_point(&map, Seq::zeros(p.n), fp_tol, max_iter, "fixed point of L^-1 F", &mut |_| {})?;
    let draft = Draft {
        y: fp.x.first_components(),
        regime: 0,
        alpha: vec![],
        iterations: fp.iterations,
        notes: vec![],
    };
    finalize(p, draft, tol)
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

struct Bisector<'a> {
    bm: BifurcationMap<'a>,
    iterations: Iterations,
}

impl Bisector<'_> {
    fn value(&mut self, a: f64) -> Result<(f64, Seq)> {
        let (v, aux) = self.bm.evaluate(&[a])?;
        self.iterations += aux.iterations;
        self.iterations.outer += 1;
        Ok((v[0], aux.x))
    }

    /// Root of the scalar bifurcation map in `[lo, hi]`, given a sign change.
    fn bisect(&mut self, mut lo: f64, mut hi: f64, mut flo: f64, width: f64) -> Result<(f64, Seq)> {
        loop {
            let mid = 0.5 * (lo + hi);
            let (fm, x) = self.value(mid)?;
            if fm == 0.0 || hi - lo <= width {
                return Ok((mid, x));
            }
            if sign(fm) == sign(flo) {
                (lo, flo) = (mid, fm);
            } else {
                hi = mid;
            }
        }
    }

    fn assemble(&self, alpha: f64, x: &Seq) -> Vec<f64> {
        self.bm.kernel(&[alpha]).add(x).first_components()
    }
}

/// Bisection on the scalar bifurcation map over `α ∈ [−r, r]`.
pub fn solve_1d(p: &Problem, r: f64, tol: f64) -> Result<SolveReport> {
    if !(r > 0.0) {
        return Err(Error::Precondition("bisection radius r must be positive".into()));
    }
    let ld = linear_for(p, 1)?;
    let mut bs = Bisector {
        bm: BifurcationMap::new(p, &ld)?,
        iterations: Iterations::default(),
    };
    let width = 1e-12 * r;
    let (f0, x0) = bs.value(0.0)?;
    if f0 == 0.0 {
        let y = bs.assemble(0.0, &x0);
        let trivial = y.iter().all(|v| v.abs() <= TRIVIAL_TOL);
        let mut nontrivial = None;
        if trivial {
            nontrivial = Some(false);
            // Sign changes strictly away from α = 0.
            let m = 16;
            'sides: for side in [-1.0, 1.0] {
                let (mut prev_a, mut prev_f) = (side * r / m as f64, bs.value(side * r / m as f64)?.0);
                for k in 2..=m {
                    let a = side * r * k as f64 / m as f64;
                    let (fa, _) = bs.value(a)?;
                    if prev_f != 0.0 && fa != 0.0 && sign(fa) != sign(prev_f) {
                        let (lo, hi, flo) = if prev_a < a { (prev_a, a, prev_f) } else { (a, prev_a, fa) };
                        let (root, xr) = bs.bisect(lo, hi, flo, width)?;
                        let yr = bs.assemble(root, &xr);
                        if oracle::residual_sup(p, &yr).is_ok_and(|res| res <= 1e-6) && yr.iter().any(|v| v.abs() > TRIVIAL_TOL) {
                            nontrivial = Some(true);
                            break 'sides;
                        }
                    }
                    (prev_a, prev_f) = (a, fa);
                }
            }
        }
        let draft = Draft {
            y,
            regime: 1,
            alpha: vec![0.0],
            iterations: bs.iterations,
            notes: vec!["bifurcation map vanishes at alpha = 0".into()],
        };
        let mut rep = finalize(p, draft, tol)?;
        rep.nontrivial_root = nontrivial;
        return Ok(rep);
    }
    let (fm, _) = bs.value(-r)?;
    let (fp, xp) = bs.value(r)?;
    let (alpha, x) = if fp == 0.0 {
        (r, xp)
    } else if fm == 0.0 {
        (-r, bs.value(-r)?.1)
    } else if sign(fm) == sign(fp) {
        return Err(Error::Hypothesis(format!(
            "bifurcation map has the same sign at alpha = -{r} ({fm:.6e}) and alpha = {r} ({fp:.6e})"
        )));
    } else {
        bs.bisect(-r, r, fm, width)?
    };
    let y = bs.assemble(alpha, &x);
    let draft = Draft {
        y,
        regime: 1,
        alpha: vec![alpha],
        iterations: bs.iterations,
        notes: vec![],
    };
    finalize(p, draft, tol)
}

/// Samples `g` to estimate `ẑ` (last sign violation of `x·g`) and `K = 1.05·max|g|`
/// on `[−span, span]`.
pub fn sample_bounds(p: &Problem, span: f64, points: usize) -> Result<(f64, f64)> {
    let points = points.max(2);
    let dx = span / (points - 1) as f64;
    let (mut zhat, mut k) = (0.0f64, 0.0f64);
    for t in 0..p.n {
        for i in 0..points {
            let x = dx * i as f64;
            for xs in [x, -x] {
                let g = p.g(t, xs)?;
                k = k.max(g.abs());
                if x > 0.0 && xs * g <= 0.0 {
                    zhat = zhat.max(x + dx);
                }
            }
        }
    }
    Ok((zhat, 1.05 * k))
}

/// Heuristic radius for the two-dimensional search:
/// `10·(ẑ + ‖M_p(I−Q)‖·K)` with `ẑ`, `K` sampled on `[−100, 100]`.
pub fn default_radius(p: &Problem, ld: &LinearData<f64>) -> Result<f64> {
    let (zhat, k) = sample_bounds(p, 100.0, 401)?;
    let upper = ld.norm_bound_mp_iq(1, 0).upper;
    let r = 10.0 * (zhat + upper * k);
    Ok(if r > 0.0 { r } else { 1.0 })
}

fn seeds(radius: f64, grid: usize) -> Vec<[f64; 2]> {
    let mut pts = vec![[0.0, 0.0]];
    if grid >= 2 {
        let h = 2.0 * radius / (grid - 1) as f64;
        for i in 0..grid {
            for j in 0..grid {
                let a = [-radius + h * i as f64, -radius + h * j as f64];
                let n = a[0].hypot(a[1]);
                if n > 0.0 && n <= radius * (1.0 + 1e-12) {
                    pts.push(a);
                }
            }
        }
    }
    pts.sort_by(|a, b| a[0].hypot(a[1]).total_cmp(&b[0].hypot(b[1])));
    pts
}

/// Finite-difference Newton on `α ↦ bifurcation_value(α)` from one seed.
fn alpha_newton(bm: &BifurcationMap, seed: [f64; 2], accept: f64, its: &mut Iterations) -> Result<Option<([f64; 2], Seq)>> {
    let eval = |a: [f64; 2], its: &mut Iterations| -> Result<([f64; 2], Seq)> {
        let (v, aux) = bm.evaluate(&a)?;
        *its += aux.iterations;
        Ok(([v[0], v[1]], aux.x))
    };
    let mut a = seed;
    let (mut v, mut x) = eval(a, its)?;
    for _ in 0..40 {
        its.outer += 1;
        if v[0].hypot(v[1]) <= accept {
            return Ok(Some((a, x)));
        }
        let mut cols = [Vec2(0.0, 0.0); 2];
        for (i, col) in cols.iter_mut().enumerate() {
            let h = FD_STEP * (1.0 + a[i].abs());
            let (mut ap, mut am) = (a, a);
            ap[i] += h;
            am[i] -= h;
            let (vp, _) = eval(ap, its)?;
            let (vm, _) = eval(am, its)?;
            *col = Vec2((vp[0] - vm[0]) / (2.0 * h), (vp[1] - vm[1]) / (2.0 * h));
        }
        let Some(jinv) = Mat2::from_cols(cols[0], cols[1]).inverse() else {
            return Ok(None);
        };
        let d = jinv * Vec2(v[0], v[1]);
        let norm = v[0].hypot(v[1]);
        let mut lambda = 1.0;
        loop {
            let trial = [a[0] - lambda * d.0, a[1] - lambda * d.1];
            if let Ok((vt, xt)) = eval(trial, its) {
                if vt[0].hypot(vt[1]) < (1.0 - 1e-4 * lambda) * norm {
                    (a, v, x) = (trial, vt, xt);
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-8 {
                return Ok(None);
            }
        }
    }
    Ok((v[0].hypot(v[1]) <= accept).then_some((a, x)))
}

/// Degree evidence on `|α| = radius`, then Newton on the planar bifurcation
/// map from a `grid × grid` seed lattice in the disk. `radius = 0` picks
/// [`default_radius`].
pub fn solve_2d(p: &Problem, radius: f64, grid: usize, tol: f64) -> Result<SolveReport> {
    let ld = linear_for(p, 2)?;
    let bm = BifurcationMap::new(p, &ld)?;
    let mut notes = Vec::new();
    let radius = if radius > 0.0 {
        radius
    } else {
        let r = default_radius(p, &ld)?;
        notes.push(format!("heuristic radius {r:.6e}"));
        r
    };
    let winding = match winding_number(&bm, radius, 32) {
        Ok(w) => Some(w),
        Err(e) => {
            notes.push(format!("winding number undefined: {e}"));
            None
        }
    };
    if winding == Some(0) {
        notes.push("winding number 0: no degree evidence for a root in the disk".into());
    }
    let (_, k) = sample_bounds(p, radius, 101)?;
    let accept = tol.max(1e-12) * p.n as f64 * k.max(1.0);
    let degenerate = p.fixes_zero();
    let seeds = seeds(radius, grid);
    let mut its = Iterations::default();
    let mut trivial: Option<SolveReport> = None;
    for seed in &seeds {
        if trivial.is_some() && seed == &[0.0, 0.0] {
            continue;
        }
        let Ok(Some((alpha, x))) = alpha_newton(&bm, *seed, accept, &mut its) else {
            continue;
        };
        let y = bm.kernel(&alpha).add(&x).first_components();
        let draft = Draft {
            y,
            regime: 2,
            alpha: alpha.to_vec(),
            iterations: its,
            notes: notes.clone(),
        };
        let Ok(mut rep) = finalize(p, draft, tol) else {
            continue;
        };
        rep.winding = winding;
        let is_trivial = rep.y.iter().all(|v| v.abs() <= TRIVIAL_TOL);
        if degenerate && is_trivial {
            if trivial.is_none() {
                trivial = Some(rep);
            }
            continue;
        }
        if let Some(mut t) = trivial {
            t.nontrivial_root = Some(true);
            t.iterations = its;
            t.notes
                .push(format!("nontrivial root at alpha = ({:.6e}, {:.6e})", alpha[0], alpha[1]));
            return Ok(t);
        }
        if degenerate {
            rep.nontrivial_root = Some(true);
        }
        return Ok(rep);
    }
    match trivial {
        Some(mut t) => {
            t.nontrivial_root = Some(false);
            t.iterations = its;
            Ok(t)
        }
        None => Err(Error::NoRoot { seeds: seeds.len() }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Bisection half-width for one-dimensional kernels.
    pub r: f64,
    /// Search radius for two-dimensional kernels; 0 selects a heuristic.
    pub radius: f64,
    pub grid: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-10,
            max_iter: 500,
            r: 10.0,
            radius: 0.0,
            grid: 9,
        }
    }
}

/// Dispatches on the kernel dimension and certifies the result with the oracle.
pub fn solve(p: &Problem, opts: &SolveOptions) -> Result<SolveReport> {
    let dim = LinearData::<f64>::from_problem(p)?.dim();
    let mut rep = match dim {
        0 => solve_nonresonant(p, opts.tol, opts.max_iter)?,
        1 => solve_1d(p, opts.r, opts.tol)?,
        _ => solve_2d(p, opts.radius, opts.grid, opts.tol)?,
    };
    oracle::certify(p, &mut rep)?;
    Ok(rep)
}
