//! Sampled checks of the existence theorems' hypotheses.
//!
//! Every verdict is computed from finite grids; conditions that quantify over
//! all real `x` are labelled `sampled` in the report.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::LinearData;
use crate::problem::Problem;

/// Relative agreement demanded of `g(t, x)` and `g(t+N, x)`.
const PERIODIC_TOL: f64 = 1e-12;
const INFLATE: f64 = 1.05;
const DEFLATE: f64 = 0.95;
/// Monte Carlo settings for the reported lower bound of `‖M_p(I−Q)‖`.
pub const MC_SAMPLES: usize = 2000;
pub const MC_SEED: u64 = 0;
pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;
/// `|θ/2π − k/j|` below which a convergent counts as exact. Any real number
/// has convergents within `1/j²`, so this must sit well under `1e-12` for
/// denominators near the default cap.
pub const U_MATCH_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Thm1,
    Cor,
    Thm2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub pass: bool,
    /// True when the verdict rests on finitely many samples.
    pub sampled: bool,
    pub detail: String,
}

/// Computed constants. Fields irrelevant to a theorem stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Quantities {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zhat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_upper: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub norm_lower: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_int: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gcd: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub big_r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_u: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(u64, u64)>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Sampling {
    pub grid: usize,
    /// `[lo, hi]` of the x range used for bounds on `g`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_range: Option<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_range: Option<(f64, f64)>,
    pub periods_probed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_schedule: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_denominator: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub theorem: Theorem,
    pub conditions: Vec<Condition>,
    pub quantities: Quantities,
    /// Conjunction of the condition verdicts.
    pub pass: bool,
    pub sampling: Sampling,
}

impl CheckReport {
    fn new(theorem: Theorem, conditions: Vec<Condition>, quantities: Quantities, sampling: Sampling) -> Self {
        let pass = conditions.iter().all(|c| c.pass);
        CheckReport {
            theorem,
            conditions,
            quantities,
            pass,
            sampling,
        }
    }

    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let n = n.max(2);
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn require_odd_period(p: &Problem) -> Result<()> {
    if p.n < 3 || p.n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("the theorems need an odd period N > 1, got {}", p.n)));
    }
    Ok(())
}

fn require_grid(grid: usize) -> Result<()> {
    if grid < 2 {
        return Err(Error::Precondition("sampling grid needs at least 2 points".into()));
    }
    Ok(())
}

/// Compares `g(t, x)` with `g(t+N, x)` for `t` in one period and `x` on `xs`.
fn periodicity(p: &Problem, xs: &[f64]) -> Result<Condition> {
    let mut worst = 0.0f64;
    for t in 0..p.n {
        for &x in xs {
            let (a, b) = (p.g(t, x)?, p.g(t + p.n, x)?);
            worst = worst.max((a - b).abs() / (1.0 + a.abs()));
        }
    }
    Ok(Condition {
        name: "periodic",
        pass: worst <= PERIODIC_TOL,
        sampled: true,
        detail: format!("max relative |g(t,x) - g(t+N,x)| = {worst:.3e}"),
    })
}

fn max_abs_g(p: &Problem, xs: impl Iterator<Item = f64> + Clone) -> Result<f64> {
    let mut m = 0.0f64;
    for t in 0..p.n {
        for x in xs.clone() {
            m = m.max(p.g(t, x)?.abs());
        }
    }
    Ok(m)
}

fn first_sign_violation(p: &Problem, xs: impl Iterator<Item = f64>, h: impl Fn(usize, f64) -> Result<f64>) -> Result<Option<(usize, f64)>> {
    for x in xs {
        for t in 0..p.n {
            for s in [x, -x] {
                if !(s * h(t, s)? > 0.0) {
                    return Ok(Some((t, s)));
                }
            }
        }
    }
    Ok(None)
}

/// Hypotheses of the existence theorem for kernels of dimension ≤ 1.
pub fn check_thm1(p: &Problem, r: f64, zhat: f64, grid: usize) -> Result<CheckReport> {
    require_odd_period(p)?;
    require_grid(grid)?;
    if !(r > 0.0 && zhat > 0.0) {
        return Err(Error::Precondition("r and zhat must be positive".into()));
    }
    let ld = LinearData::<f64>::from_problem(p)?;
    let bound = ld.norm_bound_mp_iq(MC_SAMPLES, MC_SEED);
    let xs: Vec<f64> = linspace(-2.0 * r, 2.0 * r, grid).collect();
    let periodic = periodicity(p, &xs)?;

    let delta = INFLATE * max_abs_g(p, xs.iter().copied())?;
    let c1 = Condition {
        name: "C1",
        pass: delta.is_finite(),
        sampled: true,
        detail: format!("delta = 1.05 * max |g| over |x| <= 2r = {delta:.6e}"),
    };

    let hi = 4.0 * r;
    let step = (hi - zhat) / grid as f64;
    let c2 = if step <= 0.0 {
        Condition {
            name: "C2",
            pass: true,
            sampled: true,
            detail: "empty range (zhat >= 4r)".into(),
        }
    } else {
        let bad = first_sign_violation(p, (1..=grid).map(|i| zhat + step * i as f64), |t, x| Ok(p.g(t, x)?))?;
        Condition {
            name: "C2",
            pass: bad.is_none(),
            sampled: true,
            detail: match bad {
                None => format!("x*g(t,x) > 0 on {grid} samples of zhat < |x| <= 4r"),
                Some((t, x)) => format!("x*g(t,x) <= 0 at t = {t}, x = {x:.6e}"),
            },
        }
    };

    let lhs = zhat + bound.upper * delta;
    let c3 = Condition {
        name: "C3",
        pass: lhs < r,
        sampled: false,
        detail: format!("zhat + ||M_p(I-Q)|| * delta = {lhs:.6e} vs r = {r:.6e}"),
    };

    let (b, c, n) = (p.b, p.c, p.n as f64);
    let theta = (b.abs() < 2.0).then(|| (-b / 2.0).acos());
    let c4 = match theta {
        Some(th) if (n * th / std::f64::consts::TAU - (n * th / std::f64::consts::TAU).round()).abs() <= 1e-9 => {
            let ok = (c - 1.0).abs() > 1e-9;
            Condition {
                name: "C4",
                pass: ok,
                sampled: false,
                detail: format!("N*theta is a multiple of 2*pi; requires c != 1 (c = {c})"),
            }
        }
        _ => Condition {
            name: "C4",
            pass: true,
            sampled: false,
            detail: "N*theta is not a multiple of 2*pi or |b| >= 2".into(),
        },
    };

    let quantities = Quantities {
        delta: Some(delta),
        zhat: Some(zhat),
        r: Some(r),
        norm_upper: Some(bound.upper),
        norm_lower: Some(bound.lower),
        theta,
        ..Quantities::default()
    };
    let sampling = Sampling {
        grid,
        x_range: Some((-2.0 * r, 2.0 * r)),
        sign_range: Some((zhat, hi)),
        periods_probed: 2,
        mc_samples: Some(MC_SAMPLES),
        mc_seed: Some(MC_SEED),
        ..Sampling::default()
    };
    Ok(CheckReport::new(
        Theorem::Thm1,
        vec![periodic, c1, c2, c3, c4],
        quantities,
        sampling,
    ))
}

/// Continued-fraction convergents `(k, j)` of `v ≥ 0` with `j ≤ max_den`.
pub fn convergents(v: f64, max_den: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if !a.is_finite() || a > 1e15 {
            break;
        }
        let a = a as u64;
        let (Some(p), Some(q)) = (
            a.checked_mul(p1).and_then(|m| m.checked_add(p0)),
            a.checked_mul(q1).and_then(|m| m.checked_add(q0)),
        ) else {
            break;
        };
        if q > max_den {
            break;
        }
        out.push((p, q));
        (p0, q0, p1, q1) = (p1, q1, p, q);
        let frac = x - a as f64;
        if frac <= 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    out
}

/// Whether `arccos(−b/2) = 2πk/j` with `0 ≤ 2k < j ≤ max_den`, with the witness `(k, j)`.
/// Exactness is judged at [`U_MATCH_TOL`].
pub fn membership_u(b: f64, max_den: u64) -> Result<(bool, Option<(u64, u64)>)> {
    if max_den < 2 {
        return Err(Error::Precondition("max_denominator must be at least 2".into()));
    }
    if !(b.abs() < 2.0) {
        return Err(Error::Precondition(format!("membership in U needs |b| < 2, got {b}")));
    }
    let v = (-b / 2.0).acos() / std::f64::consts::TAU;
    let hit = convergents(v, max_den)
        .into_iter()
        .find(|&(k, j)| (v - k as f64 / j as f64).abs() <= U_MATCH_TOL && 2 * k < j);
    Ok((hit.is_some(), hit))
}

fn ratios_pass(ratios: &[f64]) -> (bool, String) {
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let last = *ratios.last().unwrap_or(&f64::INFINITY);
    let tail = match ratios {
        [.., a, b] => (a - b) / a,
        _ => 0.0,
    };
    let pass = decreasing && (last < 0.1 || tail >= 0.05);
    (
        pass,
        format!("strictly decreasing: {decreasing}; final ratio {last:.6e}; last relative decrement {tail:.3e}"),
    )
}

/// Hypotheses of the corollary for autonomous nonlinearities `g(t, x) = h(x)`.
pub fn check_corollary(p: &Problem, big_r: f64, r_schedule: &[f64], grid: usize) -> Result<CheckReport> {
    require_odd_period(p)?;
    require_grid(grid)?;
    if !(big_r > 0.0) || r_schedule.len() < 2 || r_schedule.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::Precondition(
            "need R > 0 and a schedule of at least two positive radii".into(),
        ));
    }
    let r_max = r_schedule.iter().copied().fold(0.0, f64::max);
    let probe: Vec<f64> = linspace(-2.0 * r_max, 2.0 * r_max, grid.min(257)).collect();
    for &x in &probe {
        let h0 = p.g(0, x)?;
        for t in 1..p.n {
            let ht = p.g(t, x)?;
            if (ht - h0).abs() > PERIODIC_TOL * (1.0 + h0.abs()) {
                return Err(Error::Precondition(format!("g depends on t: g(0,{x}) = {h0}, g({t},{x}) = {ht}")));
            }
        }
    }
    let h = |x: f64| p.g(0, x);

    let mut ratios = Vec::with_capacity(r_schedule.len());
    for &r in r_schedule {
        let mut m = 0.0f64;
        for x in linspace(-2.0 * r, 2.0 * r, grid) {
            m = m.max(h(x)?.abs());
        }
        ratios.push(m / r);
    }
    let (c1_pass, c1_detail) = ratios_pass(&ratios);
    let c1 = Condition {
        name: "C1*",
        pass: c1_pass,
        sampled: true,
        detail: c1_detail,
    };

    let hi = 2.0 * r_max;
    let c2 = if big_r >= hi {
        Condition {
            name: "C2*",
            pass: true,
            sampled: true,
            detail: "empty range (R >= 2 max r)".into(),
        }
    } else {
        let geo = (1..=grid).map(|i| big_r * (hi / big_r).powf(i as f64 / grid as f64));
        let bad = first_sign_violation(p, geo, |_, x| Ok(h(x)?))?;
        Condition {
            name: "C2*",
            pass: bad.is_none(),
            sampled: true,
            detail: match bad {
                None => format!("x*h(x) > 0 on {grid} geometric samples of R < |x| <= 2 max r"),
                Some((_, x)) => format!("x*h(x) <= 0 at x = {x:.6e}"),
            },
        }
    };

    let (in_u, witness) = if p.b.abs() < 2.0 {
        membership_u(p.b, DEFAULT_MAX_DENOMINATOR)?
    } else {
        (false, None)
    };
    let c_is_one = (p.c - 1.0).abs() <= 1e-9;
    let c3 = Condition {
        name: "C3*",
        pass: !c_is_one || p.b.abs() >= 2.0 || !in_u,
        sampled: false,
        detail: format!("c = {}, |b| >= 2: {}, b in U: {in_u}", p.c, p.b.abs() >= 2.0),
    };

    let quantities = Quantities {
        big_r: Some(big_r),
        ratios: Some(ratios),
        in_u: (p.b.abs() < 2.0).then_some(in_u),
        witness,
        ..Quantities::default()
    };
    let sampling = Sampling {
        grid,
        x_range: Some((-hi, hi)),
        sign_range: Some((big_r, hi)),
        periods_probed: 1,
        r_schedule: Some(r_schedule.to_vec()),
        max_denominator: Some(DEFAULT_MAX_DENOMINATOR),
        ..Sampling::default()
    };
    Ok(CheckReport::new(Theorem::Cor, vec![c1, c2, c3], quantities, sampling))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Hypotheses of the existence theorem for two-dimensional kernels.
pub fn check_thm2(p: &Problem, zhat: f64, grid: usize) -> Result<CheckReport> {
    require_odd_period(p)?;
    require_grid(grid)?;
    if !(zhat > 0.0) {
        return Err(Error::Precondition("zhat must be positive".into()));
    }
    let ld = LinearData::<f64>::from_problem(p)?;
    if ld.dim() != 2 {
        return Err(Error::Precondition(format!("kernel dimension is {}, theorem needs 2", ld.dim())));
    }
    let (theta, r_int) = match (ld.class.theta, ld.class.r_int) {
        (Some(th), Some(r)) => (th, r),
        _ => {
            return Err(Error::Precondition(
                "two-dimensional kernel without a rotation angle (c != 1)".into(),
            ))
        }
    };
    let span = 1e3f64.max(10.0 * zhat);
    let xs: Vec<f64> = linspace(-span, span, grid).collect();
    let periodic = periodicity(p, &xs)?;

    let k = INFLATE * max_abs_g(p, xs.iter().copied())?;
    let c1 = Condition {
        name: "C1",
        pass: k.is_finite(),
        sampled: true,
        detail: format!("K = 1.05 * max |g| over |x| <= {span} = {k:.6e}"),
    };

    let mut inf = f64::INFINITY;
    for x in linspace(zhat, span, grid) {
        for t in 0..p.n {
            inf = inf.min(p.g(t, x)?).min(-p.g(t, -x)?);
        }
    }
    let j = DEFLATE * inf;
    let c2 = Condition {
        name: "C2",
        pass: j > 0.0,
        sampled: true,
        detail: format!("J = 0.95 * inf of min(g(t,x), -g(t,-x)) over zhat <= x <= {span} = {j:.6e}"),
    };

    let n = p.n as u64;
    let g = gcd(r_int.unsigned_abs(), n);
    let ratio = n / g;
    let need = if j > 0.0 { 3.0f64.max(k / j + 1.0) } else { f64::INFINITY };
    let c3 = Condition {
        name: "C3",
        pass: ratio as f64 >= need,
        sampled: false,
        detail: format!("N / gcd(r, N) = {ratio} vs max(3, K/J + 1) = {need:.6e}"),
    };

    let bound = ld.norm_bound_mp_iq(MC_SAMPLES, MC_SEED);
    let quantities = Quantities {
        zhat: Some(zhat),
        k: Some(k),
        j: Some(j),
        theta: Some(theta),
        r_int: Some(r_int),
        gcd: Some(g),
        norm_upper: Some(bound.upper),
        norm_lower: Some(bound.lower),
        ..Quantities::default()
    };
    let sampling = Sampling {
        grid,
        x_range: Some((-span, span)),
        sign_range: Some((zhat, span)),
        periods_probed: 2,
        mc_samples: Some(MC_SAMPLES),
        mc_seed: Some(MC_SEED),
        ..Sampling::default()
    };
    Ok(CheckReport::new(Theorem::Thm2, vec![periodic, c1, c2, c3], quantities, sampling))
}
