//! Arithmetic expressions in `t` and `x` for user-supplied nonlinearities.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?          (right-associative)
//! primary := number | 't' | 'x' | 'pi' | 'logfade'
//!          | name '(' expr (',' expr)* ')' | '(' expr ')'
//! ```
//!
//! Functions: `sin cos tan tanh atan exp ln abs sign logk` (one argument) and
//! `min max` (two). `logk` is the piecewise logarithmic fade
//! `k(x) = -1/ln(-x)` for `x <= -e`, `x/e` on `(-e, e)`, `1/ln(x)` for `x >= e`.
//! The identifier `logfade` expands to `logk(x)*x + 0.1*sign(x)*abs(x)^0.5 + 0.1`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::Scalar;

/// Source text of the `logfade` built-in.
pub const LOGFADE_SOURCE: &str = "logk(x)*x + 0.1*sign(x)*abs(x)^0.5 + 0.1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Tanh,
    Atan,
    Exp,
    Ln,
    Abs,
    Sign,
    LogK,
    Min,
    Max,
}

impl Func {
    const ALL: [Func; 12] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Tanh,
        Func::Atan,
        Func::Exp,
        Func::Ln,
        Func::Abs,
        Func::Sign,
        Func::LogK,
        Func::Min,
        Func::Max,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Tanh => "tanh",
            Func::Atan => "atan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Abs => "abs",
            Func::Sign => "sign",
            Func::LogK => "logk",
            Func::Min => "min",
            Func::Max => "max",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Min | Func::Max => 2,
            _ => 1,
        }
    }

    fn lookup(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }
}

/// Expression tree. Free variables are only `t` and `x`.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Pi,
    T,
    X,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    BadNumber(String),
    UnknownIdentifier(String),
    Arity { func: &'static str, expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{} at byte {offset}", describe(.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::UnexpectedChar(c) => format!("unexpected character {c:?}"),
        ParseErrorKind::UnexpectedToken(s) => format!("unexpected token {s:?}"),
        ParseErrorKind::UnexpectedEnd => "unexpected end of input".to_string(),
        ParseErrorKind::BadNumber(s) => format!("malformed number {s:?}"),
        ParseErrorKind::UnknownIdentifier(s) => format!("unknown identifier {s:?}"),
        ParseErrorKind::Arity { func, expected, found } => {
            format!("{func} takes {expected} argument(s), found {found}")
        }
    }
}

/// Evaluation failure; never surfaces as a NaN.
#[derive(Clone, Debug, PartialEq, Error)]
#[error("domain error in {op} at t={t}, x={x}")]
pub struct EvalError {
    pub op: &'static str,
    pub t: u64,
    pub x: f64,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() || c == '.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text = &src[start..i];
            let v: f64 = text.parse().map_err(|_| ParseError {
                kind: ParseErrorKind::BadNumber(text.to_string()),
                offset: start,
            })?;
            out.push((Tok::Num(v), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else {
            let tok = match c {
                '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                _ => {
                    let ch = src[start..].chars().next().unwrap_or(c);
                    return Err(ParseError {
                        kind: ParseErrorKind::UnexpectedChar(ch),
                        offset: start,
                    });
                }
            };
            out.push((tok, start));
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self) -> ParseError {
        let kind = match self.peek() {
            None => ParseErrorKind::UnexpectedEnd,
            Some(t) => ParseErrorKind::UnexpectedToken(token_text(t)),
        };
        ParseError {
            kind,
            offset: self.offset(),
        }
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op('+')) => BinOp::Add,
                Some(Tok::Op('-')) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Op('*')) => BinOp::Mul,
                Some(Tok::Op('/')) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => self.ident(name, at),
            _ => {
                self.pos -= 1;
                Err(self.unexpected())
            }
        }
    }

    fn ident(&mut self, name: String, at: usize) -> Result<Expr, ParseError> {
        match name.as_str() {
            "t" => return Ok(Expr::T),
            "x" => return Ok(Expr::X),
            "pi" => return Ok(Expr::Pi),
            "logfade" => return Ok(logfade()),
            _ => {}
        }
        let Some(func) = Func::lookup(&name) else {
            return Err(ParseError {
                kind: ParseErrorKind::UnknownIdentifier(name),
                offset: at,
            });
        };
        self.expect(&Tok::LParen)?;
        let mut args = vec![self.expr()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            args.push(self.expr()?);
        }
        self.expect(&Tok::RParen)?;
        if args.len() != func.arity() {
            return Err(ParseError {
                kind: ParseErrorKind::Arity {
                    func: func.name(),
                    expected: func.arity(),
                    found: args.len(),
                },
                offset: at,
            });
        }
        Ok(Expr::Call(func, args))
    }
}

fn token_text(t: &Tok) -> String {
    match t {
        Tok::Num(v) => format!("{v}"),
        Tok::Ident(s) => s.clone(),
        Tok::Op(c) => c.to_string(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
        Tok::Comma => ",".into(),
    }
}

fn logfade() -> Expr {
    parse(LOGFADE_SOURCE).expect("built-in source parses")
}

/// Parses `text` into an expression tree.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(e)
}

impl FromStr for Expr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// The `logk` fade: continuous, odd, and `|k(x)| → 0` as `|x| → ∞`.
pub fn logk<T: Scalar>(x: T) -> T {
    let e = T::E();
    if x <= -e {
        -T::one() / (-x).ln()
    } else if x < e {
        x / e
    } else {
        T::one() / x.ln()
    }
}

impl Expr {
    /// Evaluates at integer time `t` and state `x`.
    pub fn eval<T: Scalar>(&self, t: u64, x: T) -> Result<T, EvalError> {
        let fail = |op: &'static str| EvalError {
            op,
            t,
            x: x.to_f64().unwrap_or(f64::NAN),
        };
        let checked = |v: T, op: &'static str| if v.is_finite() { Ok(v) } else { Err(fail(op)) };
        match self {
            Expr::Num(v) => checked(T::lit(*v), "constant"),
            Expr::Pi => Ok(T::PI()),
            Expr::T => checked(T::from_u64(t).ok_or_else(|| fail("t"))?, "t"),
            Expr::X => checked(x, "x"),
            Expr::Neg(e) => Ok(-e.eval(t, x)?),
            Expr::Bin(op, l, r) => {
                let a = l.eval(t, x)?;
                let b = r.eval(t, x)?;
                let v = match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == T::zero() {
                            return Err(fail("/"));
                        }
                        a / b
                    }
                    BinOp::Pow => a.powf(b),
                };
                checked(v, op.symbol())
            }
            Expr::Call(f, args) => {
                let a = args[0].eval(t, x)?;
                let v = match f {
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                    Func::Tan => a.tan(),
                    Func::Tanh => a.tanh(),
                    Func::Atan => a.atan(),
                    Func::Exp => a.exp(),
                    Func::Ln => {
                        if a <= T::zero() {
                            return Err(fail("ln"));
                        }
                        a.ln()
                    }
                    Func::Abs => a.abs(),
                    Func::Sign => {
                        if a > T::zero() {
                            T::one()
                        } else if a < T::zero() {
                            -T::one()
                        } else {
                            T::zero()
                        }
                    }
                    Func::LogK => logk(a),
                    Func::Min => a.min(args[1].eval(t, x)?),
                    Func::Max => a.max(args[1].eval(t, x)?),
                };
                checked(v, f.name())
            }
        }
    }

    /// True when the tree mentions `t`.
    pub fn depends_on_t(&self) -> bool {
        match self {
            Expr::T => true,
            Expr::Num(_) | Expr::Pi | Expr::X => false,
            Expr::Neg(e) => e.depends_on_t(),
            Expr::Bin(_, l, r) => l.depends_on_t() || r.depends_on_t(),
            Expr::Call(_, args) => args.iter().any(Expr::depends_on_t),
        }
    }
}

// Printed form: every compound node is parenthesised, constants use the
// shortest round-trip decimal. Re-parsing the output yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Pi => f.write_str("pi"),
            Expr::T => f.write_str("t"),
            Expr::X => f.write_str("x"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, t: u64, x: f64) -> f64 {
        parse(s).unwrap().eval(t, x).unwrap()
    }

    #[test]
    fn bare_variable() {
        assert_eq!(parse("x").unwrap(), Expr::X);
        assert_eq!(ev("x", 7, 2.5), 2.5);
    }

    #[test]
    fn canonical_forcing_structure() {
        let e = parse("tanh(x)+0.1*cos(2*pi*t/3)").unwrap();
        let Expr::Bin(BinOp::Add, l, r) = e else { panic!("expected sum") };
        assert_eq!(*l, Expr::Call(Func::Tanh, vec![Expr::X]));
        let Expr::Bin(BinOp::Mul, c, cosine) = *r else {
            panic!("expected product")
        };
        assert_eq!(*c, Expr::Num(0.1));
        assert!(matches!(*cosine, Expr::Call(Func::Cos, _)));
        assert_eq!(ev("tanh(x)+0.1*cos(2*pi*t/3)", 0, 0.0), 0.1);
    }

    #[test]
    fn power_is_right_associative() {
        assert_eq!(ev("2^3^2", 0, 0.0), 512.0);
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        assert_eq!(ev("-2^2", 0, 0.0), -4.0);
        assert_eq!(ev("2^-1", 0, 0.0), 0.5);
        assert_eq!(ev("-x*3", 0, 2.0), -6.0);
    }

    #[test]
    fn saturation() {
        assert_eq!(ev("sign(x)*min(abs(x),1)", 0, -5.0), -1.0);
    }

    #[test]
    fn whitespace_insensitive() {
        assert_eq!(parse(" tanh ( x ) + 1 ").unwrap(), parse("tanh(x)+1").unwrap());
    }

    #[test]
    fn scientific_constants() {
        assert_eq!(ev("1e-3*x", 0, 2.0), 2e-3);
        assert_eq!(ev("2.5E+1", 0, 0.0), 25.0);
    }

    #[test]
    fn syntax_error_offsets() {
        let err = parse("x + * 2").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse("(x + 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(err.offset, 6);
        let err = parse("x $ 1").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedChar('$'));
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn unknown_identifier() {
        let err = parse("1 + y").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("y".into()));
        assert_eq!(err.offset, 4);
        assert!(parse("foo(x)").is_err());
    }

    #[test]
    fn arity_mismatch() {
        let err = parse("min(x)").unwrap_err();
        assert!(matches!(
            err.kind,
            ParseErrorKind::Arity {
                func: "min",
                expected: 2,
                found: 1
            }
        ));
        assert!(parse("sin(x, t)").is_err());
    }

    #[test]
    fn domain_errors_are_reported() {
        let e = parse("ln(x)").unwrap();
        assert_eq!(e.eval(3, 0.0).unwrap_err().op, "ln");
        assert_eq!(e.eval(3, -1.0).unwrap_err().t, 3);
        assert_eq!(parse("1/x").unwrap().eval(0, 0.0).unwrap_err().op, "/");
        assert!(parse("x^0.5").unwrap().eval(0, -1.0).is_err());
        assert!(parse("exp(x)").unwrap().eval(0, 1e6).is_err());
    }

    #[test]
    fn logk_is_continuous_at_e() {
        let e = std::f64::consts::E;
        assert_eq!(logk(e), 1.0);
        assert!((logk(e - 1e-12) - 1.0).abs() < 1e-11);
        assert_eq!(logk(-e), -1.0);
        assert!((logk(-e + 1e-12) + 1.0).abs() < 1e-11);
        assert_eq!(logk(0.0), 0.0);
    }

    #[test]
    fn logfade_builtin() {
        let h = parse("logfade").unwrap();
        let x = 100.0f64;
        let want = x / x.ln() + 0.1 * x.sqrt() + 0.1;
        assert!((h.eval(0, x).unwrap() - want).abs() < 1e-12);
        assert!(h.eval(0, -50.0f64).unwrap().is_finite());
        assert!(!h.depends_on_t());
    }

    #[test]
    fn print_reparses() {
        for s in ["tanh(x)+0.1*cos(2*pi*t/3)", "-x^2^-1", "max(x, -t) / (1 - x)", "logfade"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn generic_f32_eval() {
        let e = parse("tanh(x) + t").unwrap();
        let v: f32 = e.eval(2, 0.0f32).unwrap();
        assert_eq!(v, 2.0);
    }
}
