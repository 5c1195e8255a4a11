//! Command-line front end for `pdiff-core`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the text for
//! stdout and stderr together with the process exit code, so the binary is a
//! thin wrapper and tests can drive commands in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use pdiff_core::hypotheses::{self, DEFAULT_MAX_DENOMINATOR};
use pdiff_core::{Error as CoreError, LinearData, Problem, SolveOptions};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const TOOL: &str = "pdiff";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;

const DEFAULT_R_SCHEDULE: &str = "10,100,1000,10000,100000,1000000";

#[derive(Parser, Debug)]
#[command(name = TOOL, version, about = "Periodic solutions of y(t+2) + b·y(t+1) + c·y(t) = g(t, y(t))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel dimension of the linear part and, when resonant, its bases.
    Classify { path: PathBuf },
    /// Compute a periodic solution by Lyapunov-Schmidt reduction.
    Solve {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Search radius for two-dimensional kernels; 0 picks one from bounds on g.
        #[arg(long, default_value_t = 0.0)]
        radius: f64,
        /// Bisection half-width for one-dimensional kernels.
        #[arg(long, default_value_t = 10.0)]
        r: f64,
        /// Seed grid per axis for two-dimensional kernels.
        #[arg(long, default_value_t = 9)]
        grid: usize,
        /// Monte Carlo seed for the norm bound; overrides the problem file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "max-iter", default_value_t = 500)]
        max_iter: usize,
    },
    /// Sup-norm residual of a candidate solution.
    Verify {
        problem: PathBuf,
        solution: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sample the hypotheses of an existence theorem.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoremArg::Thm1)]
        theorem: TheoremArg,
        #[arg(long, default_value_t = 10.0)]
        r: f64,
        #[arg(long, default_value_t = 1.0)]
        zhat: f64,
        #[arg(long = "R", default_value_t = 1.0)]
        big_r: f64,
        #[arg(long, default_value_t = 2001)]
        grid: usize,
        /// Comma-separated radii for the growth-ratio test.
        #[arg(long = "r-schedule", default_value = DEFAULT_R_SCHEDULE, value_delimiter = ',')]
        r_schedule: Vec<f64>,
    },
    /// Classification sweep over b and N, written as CSV.
    Scan {
        /// `lo:hi:steps`, with `steps` evenly spaced values including both ends.
        #[arg(long = "b-range", allow_hyphen_values = true)]
        b_range: BRange,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long = "N-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TheoremArg {
    Thm1,
    Cor,
    Thm2,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
struct BRange {
    lo: f64,
    hi: f64,
    steps: usize,
}

impl std::str::FromStr for BRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, steps] = parts[..] else {
            return Err(format!("expected lo:hi:steps, got {s:?}"));
        };
        let lo: f64 = lo.trim().parse().map_err(|e| format!("lo: {e}"))?;
        let hi: f64 = hi.trim().parse().map_err(|e| format!("hi: {e}"))?;
        let steps: usize = steps.trim().parse().map_err(|e| format!("steps: {e}"))?;
        if !lo.is_finite() || !hi.is_finite() {
            return Err("range ends must be finite".into());
        }
        Ok(BRange { lo, hi, steps })
    }
}

impl BRange {
    fn values(&self) -> Vec<f64> {
        match self.steps {
            0 => vec![],
            1 => vec![self.lo],
            n => (0..n).map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

/// On-disk problem description.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub b: f64,
    pub c: f64,
    #[serde(rename = "N")]
    pub n: usize,
    pub g: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<Problem, CliError> {
        Ok(Problem::parse(self.b, self.c, self.n, &self.g)?)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionFile {
    y: Vec<f64>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Json { .. } => EXIT_PARSE,
            CliError::Core(e) => match e {
                CoreError::InvalidProblem(_) | CoreError::Parse(_) => EXIT_PARSE,
                CoreError::Hypothesis(_) | CoreError::Precondition(_) => EXIT_HYPOTHESIS,
                CoreError::Eval(_)
                | CoreError::NotInImage { .. }
                | CoreError::NonConvergence { .. }
                | CoreError::DegreeUndefined { .. }
                | CoreError::SingularJacobian { .. }
                | CoreError::NoRoot { .. } => EXIT_SOLVER,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "json",
            CliError::Core(e) => match e {
                CoreError::InvalidProblem(_) => "invalid_problem",
                CoreError::Parse(_) => "parse",
                CoreError::Eval(_) => "eval",
                CoreError::NotInImage { .. } => "not_in_image",
                CoreError::NonConvergence { .. } => "non_convergence",
                CoreError::Hypothesis(_) => "hypothesis",
                CoreError::DegreeUndefined { .. } => "degree_undefined",
                CoreError::SingularJacobian { .. } => "singular_jacobian",
                CoreError::NoRoot { .. } => "no_root",
                CoreError::Precondition(_) => "precondition",
            },
        }
    }
}

/// What a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs one command line, `args[0]` being the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stderr: text,
                    code,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stdout: text,
                    code,
                    ..Outcome::default()
                }
            };
        }
    };
    match cli.command {
        Command::Classify { path } => classify_cmd(&path),
        Command::Solve {
            path,
            tol,
            radius,
            r,
            grid,
            seed,
            max_iter,
        } => solve_cmd(
            &path,
            SolveOptions {
                tol,
                max_iter,
                r,
                radius,
                grid,
            },
            seed,
        ),
        Command::Verify { problem, solution, tol } => verify_cmd(&problem, &solution, tol),
        Command::Check {
            path,
            theorem,
            r,
            zhat,
            big_r,
            grid,
            r_schedule,
        } => check_cmd(
            &path,
            theorem,
            CheckArgs {
                r,
                zhat,
                big_r,
                grid,
                r_schedule,
            },
        ),
        Command::Scan { b_range, c, n_list, out } => scan_cmd(b_range, c, &n_list, out.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_problem(path: &Path) -> Result<(ProblemFile, Problem), CliError> {
    let file: ProblemFile = read_json(path)?;
    let problem = file.to_problem()?;
    Ok((file, problem))
}

fn envelope(command: &str, input: Value, body: Result<Value, &CliError>) -> Value {
    let mut v = json!({ "tool": TOOL, "version": VERSION, "command": command, "input": input });
    match body {
        Ok(result) => v["result"] = result,
        Err(e) => v["error"] = json!({ "kind": e.kind(), "message": e.to_string() }),
    }
    v
}

/// Finishes a JSON command: `result` carries the payload and exit code on success.
fn emit(command: &str, input: Value, result: Result<(Value, i32), CliError>) -> Outcome {
    match result {
        Ok((value, code)) => Outcome {
            stdout: to_json(&envelope(command, input, Ok(value))),
            stderr: String::new(),
            code,
        },
        Err(e) => Outcome {
            stdout: to_json(&envelope(command, input, Err(&e))),
            stderr: format!("{TOOL} {command}: {e}\n"),
            code: e.exit_code(),
        },
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize to JSON")
}

fn classify_cmd(path: &Path) -> Outcome {
    let mut input = Value::Null;
    let result = (|| {
        let (file, p) = load_problem(path)?;
        input = json!({ "problem": to_value(&file) });
        let class = pdiff_core::classify(&p)?;
        let mut out = json!({ "dim": class.dim });
        if let Some(theta) = class.theta {
            out["theta"] = json!(theta);
        }
        if let Some(r) = class.r_int {
            out["r_int"] = json!(r);
        }
        if class.dim > 0 {
            let basis = |bs: &[pdiff_core::SequenceD]| -> Value { bs.iter().map(|s| to_value(&s.values())).collect() };
            out["kernel_basis"] = basis(&class.kernel_basis);
            out["adjoint_basis"] = basis(&class.adjoint_basis);
        }
        if p.c == 1.0 && p.b.abs() < 2.0 {
            let (in_u, witness) = hypotheses::membership_u(p.b, DEFAULT_MAX_DENOMINATOR)?;
            out["in_U"] = json!(in_u);
            if let Some(w) = witness {
                out["witness"] = json!(w);
            }
        }
        Ok((out, EXIT_OK))
    })();
    emit("classify", input, result)
}

fn solve_cmd(path: &Path, opts: SolveOptions, seed: Option<u64>) -> Outcome {
    let mut input = json!({
        "options": { "tol": opts.tol, "radius": opts.radius, "r": opts.r, "grid": opts.grid, "max_iter": opts.max_iter, "seed": seed },
    });
    let result = (|| {
        let (file, p) = load_problem(path)?;
        input["problem"] = to_value(&file);
        let seed = seed.or(file.seed).unwrap_or(hypotheses::MC_SEED);
        let report = pdiff_core::solve(&p, &opts)?;
        let bound = LinearData::<f64>::from_problem(&p)?.norm_bound_mp_iq(hypotheses::MC_SAMPLES, seed);
        let mut out = to_value(&report);
        out["norm_bound"] = json!({ "lower": bound.lower, "upper": bound.upper, "mc_samples": hypotheses::MC_SAMPLES, "seed": seed });
        let code = if report.oracle_verified { EXIT_OK } else { EXIT_SOLVER };
        Ok((out, code))
    })();
    emit("solve", input, result)
}

fn verify_cmd(problem: &Path, solution: &Path, tol: f64) -> Outcome {
    let mut input = json!({ "options": { "tol": tol } });
    let result = (|| {
        let (file, p) = load_problem(problem)?;
        input["problem"] = to_value(&file);
        let sol: SolutionFile = read_json(solution)?;
        input["solution"] = json!({ "y": sol.y });
        let residual = pdiff_core::oracle::residual_sup(&p, &sol.y)?;
        let pass = residual <= tol;
        let code = if pass { EXIT_OK } else { EXIT_HYPOTHESIS };
        Ok((json!({ "residual_sup": residual, "tol": tol, "pass": pass }), code))
    })();
    emit("verify", input, result)
}

struct CheckArgs {
    r: f64,
    zhat: f64,
    big_r: f64,
    grid: usize,
    r_schedule: Vec<f64>,
}

fn check_cmd(path: &Path, theorem: TheoremArg, a: CheckArgs) -> Outcome {
    let options = match theorem {
        TheoremArg::Thm1 => json!({ "theorem": theorem, "r": a.r, "zhat": a.zhat, "grid": a.grid }),
        TheoremArg::Cor => json!({ "theorem": theorem, "R": a.big_r, "r_schedule": a.r_schedule, "grid": a.grid }),
        TheoremArg::Thm2 => json!({ "theorem": theorem, "zhat": a.zhat, "grid": a.grid }),
    };
    let mut input = json!({ "options": options });
    let result = (|| {
        let (file, p) = load_problem(path)?;
        input["problem"] = to_value(&file);
        let report = match theorem {
            TheoremArg::Thm1 => hypotheses::check_thm1(&p, a.r, a.zhat, a.grid)?,
            TheoremArg::Cor => hypotheses::check_corollary(&p, a.big_r, &a.r_schedule, a.grid)?,
            TheoremArg::Thm2 => hypotheses::check_thm2(&p, a.zhat, a.grid)?,
        };
        let code = if report.pass { EXIT_OK } else { EXIT_HYPOTHESIS };
        Ok((to_value(&report), code))
    })();
    emit("check", input, result)
}

pub const SCAN_HEADER: [&str; 8] = ["b", "c", "N", "dim", "theta", "in_U", "r_int", "gcd"];

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn scan_row(b: f64, c: f64, n: usize) -> Result<[String; 8], CliError> {
    let class = pdiff_core::classify(&Problem::parse(b, c, n, "0")?)?;
    let in_u = if b.abs() < 2.0 {
        hypotheses::membership_u(b, DEFAULT_MAX_DENOMINATOR)?.0.to_string()
    } else {
        "false".into()
    };
    Ok([
        fmt_float(b),
        fmt_float(c),
        n.to_string(),
        class.dim.to_string(),
        class.theta.map(fmt_float).unwrap_or_default(),
        in_u,
        class.r_int.map(|r| r.to_string()).unwrap_or_default(),
        class.r_int.map(|r| gcd(r.unsigned_abs(), n as u64).to_string()).unwrap_or_default(),
    ])
}

/// CSV text for a classification sweep, one row per `(b, N)` with `b` outermost.
pub fn scan_csv(bs: &[f64], c: f64, ns: &[usize]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Io {
        path: "<csv>".into(),
        source: e.into(),
    };
    w.write_record(SCAN_HEADER).map_err(csv_err)?;
    for &b in bs {
        for &n in ns {
            w.write_record(scan_row(b, c, n)?).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io {
        path: "<csv>".into(),
        source: e.into_error(),
    })?;
    Ok(String::from_utf8(bytes).expect("CSV fields are ASCII"))
}

fn scan_cmd(range: BRange, c: f64, ns: &[usize], out: Option<&Path>) -> Outcome {
    let fail = |e: CliError| Outcome {
        stdout: String::new(),
        stderr: format!("{TOOL} scan: {e}\n"),
        code: e.exit_code(),
    };
    let text = match scan_csv(&range.values(), c, ns) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    match out {
        None => Outcome {
            stdout: text,
            ..Outcome::default()
        },
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => Outcome::default(),
            Err(source) => fail(CliError::Io {
                path: path.display().to_string(),
                source,
            }),
        },
    }
}

/// Float text with 17 significant digits, or `null` when not finite.
pub fn fmt_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

/// Pretty JSON with sorted keys and every float at 17 significant digits.
pub fn to_json(v: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, v, 0);
    s.push('\n');
    s
}

fn write_value(s: &mut String, v: &Value, depth: usize) {
    let pad = |s: &mut String, d: usize| s.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Null => s.push_str("null"),
        Value::Bool(b) => s.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match n.as_f64() {
            Some(f) if n.is_f64() => s.push_str(&fmt_float(f)),
            _ => write!(s, "{n}").unwrap(),
        },
        Value::String(t) => s.push_str(&Value::String(t.clone()).to_string()),
        Value::Array(items) if items.is_empty() => s.push_str("[]"),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            s.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                write_value(s, item, depth);
            }
            s.push(']');
        }
        Value::Array(items) => {
            s.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(s, depth + 1);
                write_value(s, item, depth + 1);
                s.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(s, depth);
            s.push(']');
        }
        Value::Object(map) if map.is_empty() => s.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            s.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(s, depth + 1);
                write!(s, "{}: ", Value::String((*k).clone())).unwrap();
                write_value(s, &map[*k], depth + 1);
                s.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(s, depth);
            s.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(fmt_float(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_float(2.0), "2.0000000000000000e0");
        for v in [0.1, 1.0 / 3.0, -2.5e-300, std::f64::consts::PI, 1e300] {
            assert_eq!(fmt_float(v).parse::<f64>().unwrap(), v);
        }
        assert_eq!(fmt_float(f64::NAN), "null");
    }

    #[test]
    fn json_writer_sorts_keys_and_parses_back() {
        let v = json!({ "z": 1, "a": [1.5, 2, "s\"q"], "m": { "y": null, "b": true }, "e": [] });
        let text = to_json(&v);
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["a"][0], json!(1.5));
        assert_eq!(back["z"], json!(1));
        assert_eq!(back["m"]["b"], json!(true));
    }

    #[test]
    fn b_range_parsing() {
        assert_eq!("1:1:1".parse::<BRange>().unwrap().values(), vec![1.0]);
        assert_eq!("0:1:3".parse::<BRange>().unwrap().values(), vec![0.0, 0.5, 1.0]);
        assert!("0:1:0".parse::<BRange>().unwrap().values().is_empty());
        assert!("0:1".parse::<BRange>().is_err());
        assert!("a:1:2".parse::<BRange>().is_err());
        assert!("0:1:-2".parse::<BRange>().is_err());
    }

    #[test]
    fn gcd_small_cases() {
        assert_eq!(gcd(1, 3), 1);
        assert_eq!(gcd(6, 9), 3);
        assert_eq!(gcd(0, 5), 5);
    }
}
