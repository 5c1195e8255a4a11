//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

use std::f64::consts::TAU;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use pdiff_core::hypotheses::{self, Theorem, U_MATCH_TOL};
use pdiff_core::oracle;
use pdiff_core::reduction::{ls_residuals, winding_number};
use pdiff_core::{BifurcationMap, LinearDataD, Problem, SequenceD, SolveOptions, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TC: &str = "tanh(x)+0.1*cos(2*pi*t/3)";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// The 20×20×5 sweep over b ∈ [−3, 3], c ∈ [−2, 2], N ∈ {3, …, 11}.
fn sweep() -> Vec<(f64, f64, usize)> {
    let mut out = Vec::new();
    for &b in &linspace(-3.0, 3.0, 20) {
        for &c in &linspace(-2.0, 2.0, 20) {
            for n in [3, 5, 7, 9, 11] {
                out.push((b, c, n));
            }
        }
    }
    out
}

/// Instances placed exactly on the resonance surfaces.
fn resonant() -> Vec<(f64, f64, usize)> {
    let mut out = Vec::new();
    for &b in &linspace(-3.0, 1.5, 10) {
        if (1.0 + b).abs() > 1e-12 {
            for n in [3, 4, 5, 8, 11] {
                out.push((b, -1.0 - b, n));
            }
        }
    }
    for &b in &[-2.5, 0.5, 3.0] {
        for n in [4, 6] {
            out.push((b, b - 1.0, n));
        }
    }
    for n in 3..=11usize {
        for r in 1..=(n - 1) / 2 {
            out.push((-2.0 * (TAU * r as f64 / n as f64).cos(), 1.0, n));
        }
    }
    for n in [4, 6, 8] {
        out.push((0.0, -1.0, n));
    }
    for n in [3, 5, 7] {
        out.push((-2.0, 1.0, n));
    }
    for n in [4, 6] {
        out.push((2.0, 1.0, n));
    }
    out
}

fn full_grid() -> Vec<(f64, f64, usize)> {
    let mut g = sweep();
    g.extend(resonant());
    g
}

/// Kernel dimension from first principles: the number of distinct N-th roots
/// of unity ω with ω² + bω + c = 0. Companion matrices carry one eigenvector
/// per eigenvalue, so each such root contributes exactly one dimension.
fn roots_of_unity_dim(b: f64, c: f64, n: usize) -> usize {
    let tol = 1e-9 * (1.0 + b.abs() + c.abs());
    let mut hits: Vec<(f64, f64)> = Vec::new();
    for k in 0..n {
        let (re, im) = ((TAU * k as f64 / n as f64).cos(), (TAU * k as f64 / n as f64).sin());
        let (r2, i2) = (re * re - im * im, 2.0 * re * im);
        let (pr, pi) = (r2 + b * re + c, i2 + b * im);
        if pr.hypot(pi) <= tol && !hits.iter().any(|&(a, d)| (a - re).hypot(d - im) < 1e-6) {
            hits.push((re, im));
        }
    }
    hits.len()
}

fn random_seq(rng: &mut ChaCha8Rng, n: usize) -> SequenceD {
    SequenceD::from_fn(n, |_| Vec2(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
}

fn ld(b: f64, c: f64, n: usize) -> LinearDataD {
    LinearDataD::new(b, c, n).expect("grid instance is valid")
}

fn within(elapsed: Duration, limit: f64, what: &str) -> Result<(), String> {
    if elapsed.as_secs_f64() < limit {
        Ok(())
    } else {
        Err(format!("{what} took {:.2} s, limit {limit} s", elapsed.as_secs_f64()))
    }
}

fn projection_suite() -> Outcome {
    let start = Instant::now();
    let grid = full_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut dims = [0usize; 3];
    let (mut pp, mut qq, mut ql, mut lk) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(b, c, n) in &grid {
        let l = ld(b, c, n);
        dims[l.dim()] += 1;
        for k in &l.class.kernel_basis {
            lk = lk.max(l.apply_l(k).sup_norm());
        }
        for _ in 0..100 {
            let x = random_seq(&mut rng, n);
            let px = l.proj_p(&x);
            pp = pp.max(l.proj_p(&px).dist(&px));
            let qx = l.proj_q(&x);
            qq = qq.max(l.proj_q(&qx).dist(&qx));
            ql = ql.max(l.proj_q(&l.apply_l(&x)).sup_norm());
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} instances (dim 0/1/2: {}/{}/{}), max |P²x−Px| {pp:.1e}, |Q²x−Qx| {qq:.1e}, |QLx| {ql:.1e}, |Lk| {lk:.1e}, {:.2} s",
        grid.len(),
        dims[0],
        dims[1],
        dims[2],
        elapsed.as_secs_f64()
    );
    within(elapsed, 10.0, "projection suite")?;
    if dims.contains(&0) || grid.len() < 100 {
        return Err(format!("grid does not span all dimensions: {detail}"));
    }
    if pp.max(qq).max(ql).max(lk) <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn duality() -> Outcome {
    let grid = full_grid();
    let res = resonant();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut mismatches = Vec::new();
    let mut agree = |l: &LinearDataD, h: &SequenceD, label: &str, expect_in: Option<bool>| {
        let by_pairing = l.in_image(h);
        let by_q = l.proj_q(h).sup_norm() <= 1e-9 * (1.0 + h.sup_norm());
        if by_pairing != by_q || expect_in.is_some_and(|e| e != by_pairing) {
            mismatches.push(format!("{label} b={} c={} N={}", l.b, l.c, l.n));
        }
    };
    let mut out_of_image = 0;
    for i in 0..1000 {
        // Alternate resonant and sweep instances so both verdicts occur.
        let (b, c, n) = if i % 2 == 0 {
            res[rng.gen_range(0..res.len())]
        } else {
            grid[rng.gen_range(0..grid.len())]
        };
        let l = ld(b, c, n);
        let h = random_seq(&mut rng, n);
        if !l.in_image(&h) {
            out_of_image += 1;
        }
        agree(&l, &h, "random", if l.dim() == 0 { Some(true) } else { None });
    }
    for i in 0..100 {
        let (b, c, n) = res[i % res.len()];
        let l = ld(b, c, n);
        let h = l.apply_l(&random_seq(&mut rng, n));
        agree(&l, &h, "Lx", Some(true));
    }
    let mut dim_mismatch = Vec::new();
    for &(b, c, n) in &grid {
        let got = ld(b, c, n).dim();
        let want = roots_of_unity_dim(b, c, n);
        if got != want {
            dim_mismatch.push(format!("b={b} c={c} N={n}: {got} vs {want}"));
        }
    }
    let detail = format!(
        "1100 inputs ({out_of_image} outside the image), {} pairing/Q mismatches; {} grid instances, {} dim mismatches",
        mismatches.len(),
        grid.len(),
        dim_mismatch.len()
    );
    if mismatches.is_empty() && dim_mismatch.is_empty() {
        Ok(detail)
    } else {
        Err(format!(
            "{detail}: {:?} {:?}",
            &mismatches[..mismatches.len().min(5)],
            &dim_mismatch[..dim_mismatch.len().min(5)]
        ))
    }
}

fn mp_contract() -> Outcome {
    let grid = full_grid();
    let res = resonant();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst_l, mut worst_p) = (0.0f64, 0.0f64);
    for i in 0..500 {
        let (b, c, n) = if i % 2 == 0 {
            res[rng.gen_range(0..res.len())]
        } else {
            grid[rng.gen_range(0..grid.len())]
        };
        let l = ld(b, c, n);
        let raw = random_seq(&mut rng, n);
        // Half the suite is L·x, half is a random sequence with its Q part removed.
        let h = if i % 4 < 2 { l.apply_l(&raw) } else { raw.sub(&l.proj_q(&raw)) };
        let x = l.mp_solve(&h).map_err(|e| format!("b={b} c={c} N={n}: {e}"))?;
        worst_l = worst_l.max(l.apply_l(&x).dist(&h) / (1.0 + h.sup_norm()));
        worst_p = worst_p.max(l.proj_p(&x).sup_norm());
    }
    let detail = format!("500 in-image inputs, max |L(M_p h)−h|/(1+|h|) {worst_l:.1e}, max |P M_p h| {worst_p:.1e}");
    if worst_l <= 1e-9 && worst_p <= 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ls_equivalence() -> Outcome {
    let tol = 1e-10;
    let opts = SolveOptions {
        tol,
        ..SolveOptions::default()
    };
    let b5 = -2.0 * (TAU / 5.0).cos();
    let instances: [(f64, f64, usize, &str); 12] = [
        (0.0, 2.0, 3, TC),
        (0.5, 2.0, 5, "tanh(x)+0.1*cos(2*pi*t/5)"),
        (-3.0, -2.0, 5, "0.5*sin(x)+0.2"),
        (1.0, -1.5, 7, "0.3*atan(x)+0.1*sin(2*pi*t/7)"),
        (-3.0, 2.0, 3, TC),
        (-3.0, 2.0, 5, "tanh(x)+0.1*cos(2*pi*t/5)"),
        (-2.5, 1.5, 7, "atan(x)+0.2*sin(2*pi*t/7)"),
        (-1.5, 0.5, 5, "0.8*tanh(x)+0.1*cos(2*pi*t/5)"),
        (1.0, 1.0, 3, TC),
        (b5, 1.0, 5, "tanh(x)+0.1*cos(2*pi*t/5)"),
        (-1.0, 1.0, 6, "tanh(x)+0.1*cos(2*pi*t/6)"),
        (1.0, 1.0, 3, "atan(x)+0.05*sin(2*pi*t/3)"),
    ];
    let mut checked = 0;
    let mut oracle_checked = 0;
    let (mut worst_fwd, mut worst_back) = (0.0f64, 0.0f64);
    for &(b, c, n, g) in &instances {
        let label = format!("b={b} c={c} N={n} g={g}");
        let p = Problem::parse(b, c, n, g).map_err(|e| format!("{label}: {e}"))?;
        let l = LinearDataD::from_problem(&p).map_err(|e| e.to_string())?;
        let rep = pdiff_core::solve(&p, &opts).map_err(|e| format!("{label}: {e}"))?;
        let ls = ls_residuals(&l, &p, &rep.solution).map_err(|e| e.to_string())?;
        let scalar = oracle::residual_sup(&p, &rep.y).map_err(|e| e.to_string())?;
        let fwd = ls.auxiliary.max(ls.bifurcation).max(scalar);
        worst_fwd = worst_fwd.max(fwd);
        if fwd > 10.0 * tol {
            return Err(format!(
                "{label}: solver solution residuals aux {:.1e} bif {:.1e} scalar {scalar:.1e}",
                ls.auxiliary, ls.bifurcation
            ));
        }
        for y in oracle::multistart_search(&p, 20, 5.0, 11) {
            let ls = ls_residuals(&l, &p, &SequenceD::from_scalar(&y)).map_err(|e| e.to_string())?;
            let back = ls.auxiliary.max(ls.bifurcation);
            worst_back = worst_back.max(back);
            if back > 1e-8 {
                return Err(format!("{label}: oracle solution violates reduced system by {back:.1e}"));
            }
            oracle_checked += 1;
        }
        checked += 1;
    }
    let detail = format!(
        "{checked} instances, solver side max residual {worst_fwd:.1e} (limit {:.0e}), {oracle_checked} oracle solutions, max reduced residual {worst_back:.1e}",
        10.0 * tol
    );
    if checked >= 10 {
        Ok(detail)
    } else {
        Err(format!("only {detail}"))
    }
}

fn canonical(dim: usize) -> Problem {
    let (b, c) = [(0.0, 2.0), (-3.0, 2.0), (1.0, 1.0)][dim];
    Problem::parse(b, c, 3, TC).expect("canonical instance parses")
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for dim in 0..3 {
        let p = canonical(dim);
        let rep = pdiff_core::solve(&p, &SolveOptions::default()).map_err(|e| format!("dim {dim}: {e}"))?;
        let sols = oracle::multistart_search(&p, 20, 5.0, 5);
        let dist = sols
            .iter()
            .map(|y| y.iter().zip(&rep.y).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())))
            .fold(f64::INFINITY, f64::min);
        if dist.is_nan() || dist > 1e-8 {
            return Err(format!("dim {dim}: nearest of {} oracle solutions at {dist:.1e}", sols.len()));
        }
        let check = if dim < 2 {
            hypotheses::check_thm1(&p, 10.0, 1.0, 2001)
        } else {
            hypotheses::check_thm2(&p, 1.0, 2001)
        }
        .map_err(|e| format!("dim {dim}: {e}"))?;
        if !check.pass {
            let failed: Vec<_> = check.conditions.iter().filter(|c| !c.pass).map(|c| c.name).collect();
            return Err(format!("dim {dim}: {:?} failed {failed:?}", check.theorem));
        }
        let name = if check.theorem == Theorem::Thm2 { "thm2" } else { "thm1" };
        parts.push(format!("dim {dim}: |y−y_oracle| {dist:.1e}, {name} pass"));
    }
    let elapsed = start.elapsed();
    within(elapsed, 5.0, "oracle equivalence")?;
    Ok(format!("{}; {:.2} s", parts.join("; "), elapsed.as_secs_f64()))
}

fn degree_evidence() -> Outcome {
    let p2 = canonical(2);
    let l2 = LinearDataD::from_problem(&p2).map_err(|e| e.to_string())?;
    let m2 = BifurcationMap::new(&p2, &l2).map_err(|e| e.to_string())?;
    let w32 = winding_number(&m2, 50.0, 32).map_err(|e| e.to_string())?;
    let w64 = winding_number(&m2, 50.0, 64).map_err(|e| e.to_string())?;
    let p1 = canonical(1);
    let l1 = LinearDataD::from_problem(&p1).map_err(|e| e.to_string())?;
    let m1 = BifurcationMap::new(&p1, &l1).map_err(|e| e.to_string())?;
    let plus = m1.bifurcation_value(&[10.0]).map_err(|e| e.to_string())?[0];
    let minus = m1.bifurcation_value(&[-10.0]).map_err(|e| e.to_string())?[0];
    let detail = format!("winding at radius 50: {w32} (32 samples), {w64} (64 samples); H(+10) = {plus:.4e}, H(−10) = {minus:.4e}");
    if w32 == 1 && w64 == 1 && plus > 0.0 && minus < 0.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Continued-fraction convergents of `v`, computed from scratch.
fn independent_convergents(v: f64, max_den: u64) -> Vec<(u64, u64)> {
    let (mut h0, mut h1, mut k0, mut k1) = (0u64, 1u64, 1u64, 0u64);
    let mut x = v;
    let mut out = Vec::new();
    for _ in 0..64 {
        let a = x.floor();
        let (h, k) = (a as u64 * h1 + h0, a as u64 * k1 + k0);
        if k > max_den {
            break;
        }
        out.push((h, k));
        (h0, h1, k0, k1) = (h1, h, k1, k);
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    out
}

fn u_membership() -> Outcome {
    let cases: [(f64, Option<(u64, u64)>); 4] = [(1.0, Some((1, 3))), (0.0, Some((1, 4))), (-1.0, Some((1, 6))), (1.2, None)];
    let mut parts = Vec::new();
    for (b, want) in cases {
        let (inside, witness) = hypotheses::membership_u(b, 1_000_000).map_err(|e| e.to_string())?;
        let v = (-b / 2.0).acos() / TAU;
        let exact: Vec<_> = independent_convergents(v, 1_000_000)
            .into_iter()
            .filter(|&(k, j)| 2 * k < j && (v - k as f64 / j as f64).abs() <= U_MATCH_TOL)
            .collect();
        let independent = exact.first().copied();
        if inside != want.is_some() || witness != want || independent != want {
            return Err(format!(
                "b={b}: got ({inside}, {witness:?}), independent {independent:?}, expected {want:?}"
            ));
        }
        parts.push(format!("b={b}: {inside} {witness:?}"));
    }
    Ok(parts.join(", "))
}

fn norm_bounds() -> Outcome {
    let grid = full_grid();
    let mut violations = Vec::new();
    for &(b, c, n) in &grid {
        let nb = ld(b, c, n).norm_bound_mp_iq(hypotheses::MC_SAMPLES, hypotheses::MC_SEED);
        if nb.lower.is_nan() || nb.lower > nb.upper {
            violations.push(format!("b={b} c={c} N={n}: {} > {}", nb.lower, nb.upper));
        }
    }
    let mut ratios = Vec::new();
    let mut flagged = Vec::new();
    for dim in 0..3 {
        let nb = LinearDataD::from_problem(&canonical(dim))
            .map_err(|e| e.to_string())?
            .norm_bound_mp_iq(hypotheses::MC_SAMPLES, hypotheses::MC_SEED);
        let ratio = nb.upper / nb.lower;
        ratios.push(format!("dim {dim} {ratio:.3}"));
        if ratio > 4.0 {
            flagged.push(dim);
        }
    }
    let flag = if flagged.is_empty() {
        String::new()
    } else {
        format!(" [flag: ratio above 4 for dims {flagged:?}]")
    };
    let detail = format!(
        "{} instances, {} lower > upper; upper/lower on canonical: {}{flag}",
        grid.len(),
        violations.len(),
        ratios.join(", ")
    );
    if violations.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}: {:?}", &violations[..violations.len().min(5)]))
    }
}

fn growth_ratio_contrast() -> Outcome {
    let schedule = [1e1, 1e2, 1e3, 1e4, 1e5, 1e6];
    let run = |g: &str| -> Result<(bool, Vec<f64>), String> {
        let p = Problem::parse(0.0, 2.0, 3, g).map_err(|e| e.to_string())?;
        let rep = hypotheses::check_corollary(&p, 1.0, &schedule, 2001).map_err(|e| e.to_string())?;
        let c1 = rep.condition("C1*").ok_or("no C1* condition")?;
        Ok((c1.pass, rep.quantities.ratios.clone().unwrap_or_default()))
    };
    let (log_pass, log_ratios) = run("logfade")?;
    let (lin_pass, lin_ratios) = run("x")?;
    let decreasing = log_ratios.windows(2).all(|w| w[1] < w[0]);
    let detail = format!(
        "logfade C1* {} (ratios {:.3} → {:.3}, decreasing {decreasing}); x C1* {} (ratios {:.3} → {:.3})",
        if log_pass { "pass" } else { "fail" },
        log_ratios.first().unwrap_or(&f64::NAN),
        log_ratios.last().unwrap_or(&f64::NAN),
        if lin_pass { "pass" } else { "fail" },
        lin_ratios.first().unwrap_or(&f64::NAN),
        lin_ratios.last().unwrap_or(&f64::NAN),
    );
    if log_pass && decreasing && !lin_pass {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let write = |name: &str, text: &str| std::fs::write(d.join(name), text).map_err(|e| e.to_string());
    write("dim0.json", &format!(r#"{{"b":0,"c":2,"N":3,"g":"{TC}"}}"#))?;
    write("dim1.json", &format!(r#"{{"b":-3,"c":2,"N":3,"g":"{TC}","seed":7}}"#))?;
    write("dim2.json", &format!(r#"{{"b":1,"c":1,"N":3,"g":"{TC}"}}"#))?;
    write("logfade.json", r#"{"b":0,"c":2,"N":3,"g":"logfade"}"#)?;
    write("zero.json", r#"{"y":[0,0,0]}"#)?;
    let p = |name: &str| d.join(name).display().to_string();
    let runs: Vec<Vec<String>> = vec![
        vec!["classify".into(), p("dim0.json")],
        vec!["classify".into(), p("dim2.json")],
        vec!["solve".into(), p("dim0.json")],
        vec!["solve".into(), p("dim1.json"), "--seed".into(), "3".into()],
        vec!["solve".into(), p("dim2.json"), "--radius".into(), "50".into()],
        vec!["verify".into(), p("dim0.json"), p("zero.json")],
        vec!["check".into(), p("dim1.json"), "--theorem".into(), "thm1".into()],
        vec!["check".into(), p("logfade.json"), "--theorem".into(), "cor".into()],
        vec!["check".into(), p("dim2.json"), "--theorem".into(), "thm2".into()],
        vec![
            "scan".into(),
            "--b-range".into(),
            "-3:3:13".into(),
            "--c".into(),
            "1".into(),
            "--N-list".into(),
            "3,5,7".into(),
        ],
    ];
    let bin = env!("CARGO_BIN_EXE_pdiff");
    let invoke = |args: &[String]| -> Result<(Vec<u8>, i32), String> {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        Ok((out.stdout, out.status.code().unwrap_or(-1)))
    };
    let mut bytes = 0;
    for args in &runs {
        let (a, code_a) = invoke(args)?;
        let (b, code_b) = invoke(args)?;
        if a != b || code_a != code_b {
            return Err(format!("`pdiff {}` differs between runs", args.join(" ")));
        }
        if a.is_empty() {
            return Err(format!("`pdiff {}` printed nothing", args.join(" ")));
        }
        bytes += a.len();
    }
    let csv_args = |out: &Path| -> Vec<String> {
        ["scan", "--b-range", "-1.9:1.9:20", "--c", "1", "--N-list", "3,5,7,9,11", "--out"]
            .iter()
            .map(|s| s.to_string())
            .chain([out.display().to_string()])
            .collect()
    };
    let (f1, f2) = (d.join("a.csv"), d.join("b.csv"));
    invoke(&csv_args(&f1))?;
    invoke(&csv_args(&f2))?;
    let (c1, c2) = (
        std::fs::read(&f1).map_err(|e| e.to_string())?,
        std::fs::read(&f2).map_err(|e| e.to_string())?,
    );
    if c1 != c2 || c1.is_empty() {
        return Err("scan --out files differ".into());
    }
    Ok(format!(
        "{} command lines run twice, {bytes} bytes identical; scan CSV files identical ({} bytes)",
        runs.len(),
        c1.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("projection suite", projection_suite),
        ("image/kernel duality", duality),
        ("M_p contract", mp_contract),
        ("LS equivalence", ls_equivalence),
        ("oracle equivalence", oracle_equivalence),
        ("degree evidence", degree_evidence),
        ("U-membership", u_membership),
        ("norm-bound soundness", norm_bounds),
        ("growth-ratio contrast", growth_ratio_contrast),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
