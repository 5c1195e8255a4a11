//! Brute-force solver for the cyclic scalar system.
//!
//! Treats `(y(0), …, y(N−1))` as an unknown N-vector and applies damped
//! Newton directly to the recurrence residual. Nothing here touches the
//! operator machinery in [`crate::linear`], so it can serve as an
//! independent check of the reduction solvers.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::reduction::SolveReport;

/// Default sup-norm residual target for [`newton_solve`].
pub const NEWTON_TOL: f64 = 1e-11;
/// Residual threshold used by [`certify`].
pub const CERTIFY_TOL: f64 = 1e-9;
/// Two solutions closer than this in sup norm count as one.
pub const DEDUPE_TOL: f64 = 1e-6;

/// `y((t+2) mod N) + b·y((t+1) mod N) + c·y(t) − g(t, y(t))` for each `t`.
pub fn residual(p: &Problem, y: &[f64]) -> Result<Vec<f64>> {
    let n = y.len();
    if n != p.n {
        return Err(Error::InvalidProblem(format!("expected {} values, got {n}", p.n)));
    }
    (0..n)
        .map(|t| Ok(y[(t + 2) % n] + p.b * y[(t + 1) % n] + p.c * y[t] - p.g(t, y[t])?))
        .collect()
}

pub fn residual_sup(p: &Problem, y: &[f64]) -> Result<f64> {
    Ok(sup(&residual(p, y)?))
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonOutcome {
    pub y: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

fn jacobian(p: &Problem, y: &[f64]) -> Result<DMatrix<f64>> {
    let n = y.len();
    let mut jac = DMatrix::zeros(n, n);
    let mut probe = y.to_vec();
    for i in 0..n {
        let h = 1e-7 * (1.0 + y[i].abs());
        probe[i] = y[i] + h;
        let plus = residual(p, &probe)?;
        probe[i] = y[i] - h;
        let minus = residual(p, &probe)?;
        probe[i] = y[i];
        for t in 0..n {
            jac[(t, i)] = (plus[t] - minus[t]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Damped Newton with Armijo backtracking on `‖r‖²`.
pub fn newton_solve(p: &Problem, y0: &[f64], tol: f64, max_iter: usize) -> Result<NewtonOutcome> {
    let mut y = y0.to_vec();
    let mut r = residual(p, &y)?;
    for it in 0..=max_iter {
        let rs = sup(&r);
        if rs <= tol {
            return Ok(NewtonOutcome {
                y,
                iterations: it,
                residual: rs,
            });
        }
        if it == max_iter {
            break;
        }
        let lu = jacobian(p, &y)?.lu();
        let pivots = lu.u().diagonal().map(f64::abs);
        if pivots.min() <= 1e-13 * pivots.max() {
            return Err(Error::SingularJacobian { iteration: it });
        }
        let step = lu
            .solve(&DVector::from_column_slice(&r))
            .filter(|d| d.iter().all(|v| v.is_finite()))
            .ok_or(Error::SingularJacobian { iteration: it })?;
        let f0 = sq(&r);
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = y.iter().zip(step.iter()).map(|(a, d)| a - lambda * d).collect();
            if let Ok(rt) = residual(p, &trial) {
                if sq(&rt) <= (1.0 - 2e-4 * lambda) * f0 {
                    y = trial;
                    r = rt;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-10 {
                return Err(Error::NonConvergence {
                    what: "oracle Newton line search",
                    iterations: it,
                    residual: rs,
                    best: Some(y),
                });
            }
        }
    }
    Err(Error::NonConvergence {
        what: "oracle Newton",
        iterations: max_iter,
        residual: sup(&r),
        best: Some(y),
    })
}

/// Newton from `n_starts` uniform starts in `[−bound, bound]^N`, deduplicated and
/// sorted lexicographically.
///
/// Starts are drawn from one sequential stream, so a run with more starts
/// replays every start of a run with fewer.
pub fn multistart_search(p: &Problem, n_starts: usize, bound: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<Vec<f64>> = Vec::new();
    for _ in 0..n_starts {
        let y0: Vec<f64> = (0..p.n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(out) = newton_solve(p, &y0, NEWTON_TOL, 100) {
            let dup = found
                .iter()
                .any(|s| s.iter().zip(&out.y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())) <= DEDUPE_TOL);
            if !dup {
                found.push(out.y);
            }
        }
    }
    found.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    found
}

/// Recomputes the residual of `report.y` from scratch and records whether it
/// passes at [`CERTIFY_TOL`].
pub fn certify(p: &Problem, report: &mut SolveReport) -> Result<bool> {
    let rs = residual_sup(p, &report.y)?;
    report.residual_sup = rs;
    report.oracle_verified = rs <= CERTIFY_TOL;
    Ok(report.oracle_verified)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prob(b: f64, c: f64, n: usize, g: &str) -> Problem {
        Problem::parse(b, c, n, g).unwrap()
    }

    #[test]
    fn residual_zero_cases() {
        assert_eq!(residual(&prob(-3.0, 2.0, 3, "tanh(x)"), &[0.0; 3]).unwrap(), vec![0.0; 3]);
        let r = residual(&prob(0.0, 2.0, 3, "1"), &[1.0 / 3.0; 3]).unwrap();
        assert!(sup(&r) < 1e-15);
    }

    #[test]
    fn residual_is_cyclic_matrix_for_linear_g() {
        let p = prob(0.7, -1.3, 4, "x");
        let y = [0.3, -1.1, 2.0, 0.5];
        let r = residual(&p, &y).unwrap();
        let r0 = residual(&p, &[0.0; 4]).unwrap();
        for t in 0..4 {
            let direct = y[(t + 2) % 4] + 0.7 * y[(t + 1) % 4] + (-1.3 - 1.0) * y[t];
            assert!((r[t] - r0[t] - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(residual(&prob(0.0, 2.0, 3, "x"), &[0.0; 4]).is_err());
    }

    #[test]
    fn exact_start_returns_immediately() {
        let p = prob(0.0, 2.0, 3, "1");
        let out = newton_solve(&p, &[1.0 / 3.0; 3], NEWTON_TOL, 20).unwrap();
        assert!(out.iterations <= 1);
        assert!(out.y.iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-14));
    }

    #[test]
    fn affine_converges_in_two_steps() {
        let p = prob(0.5, 2.0, 5, "x+1");
        let out = newton_solve(&p, &[3.0, -2.0, 1.0, 0.0, 4.0], NEWTON_TOL, 20).unwrap();
        assert!(out.iterations <= 2, "{}", out.iterations);
        // (1 + b + c − 1)·y = 1
        assert!(out.y.iter().all(|v| (v - 1.0 / 2.5).abs() < 1e-12));
    }

    #[test]
    fn singular_jacobian_reported() {
        // 1 + b + c = 0: constants span the kernel of the linearization.
        let p = prob(-3.0, 2.0, 3, "1");
        assert!(matches!(
            newton_solve(&p, &[0.0; 3], NEWTON_TOL, 5),
            Err(Error::SingularJacobian { .. })
        ));
    }

    #[test]
    fn multistart_zero_forcing_unique() {
        let sols = multistart_search(&prob(0.0, 2.0, 3, "0"), 10, 5.0, 1);
        assert_eq!(sols.len(), 1);
        assert!(sup(&sols[0]) < 1e-12);
    }

    #[test]
    fn multistart_monotone_under_doubling() {
        let p = prob(-3.0, 2.0, 3, "tanh(x)+0.1*cos(2*pi*t/3)");
        let small = multistart_search(&p, 20, 5.0, 7);
        let large = multistart_search(&p, 40, 5.0, 7);
        assert!(!small.is_empty());
        for s in &small {
            assert!(large.iter().any(|l| l.iter().zip(s).all(|(a, b)| (a - b).abs() <= DEDUPE_TOL)));
        }
        assert_eq!(small, multistart_search(&p, 20, 5.0, 7));
    }
}
