//! Polynomial-with-sign expressions `ℝⁿ → ℝ`, their evaluation over the
//! hyperreals, and infinitesimal continuity probes.
//!
//! A probe moves a standard point `x` to `y = x + εᵏ·h` and asks whether
//! `f(x) - f(y)` is i-small. Probes refute continuity; they never prove it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyperreal::Lc;
use crate::scalar::Rat;
use crate::vector::{check_dims, metric_sq, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Zero-based variable index; `x1` is `Var(0)`.
    Var(usize),
    Const(Rat),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Sign function with `sgn(0) = 0`.
    Sgn(Box<Expr>),
}

impl Expr {
    pub fn var(i: usize) -> Expr {
        Expr::Var(i)
    }

    pub fn constant(c: impl Into<Rat>) -> Expr {
        Expr::Const(c.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn sgn(a: Expr) -> Expr {
        Expr::Sgn(Box::new(a))
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Var(i) => Some(*i),
            Expr::Const(_) => None,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => a.max_var().max(b.max_var()),
            Expr::Neg(a) | Expr::Sgn(a) => a.max_var(),
        }
    }

    pub fn contains_sgn(&self) -> bool {
        match self {
            Expr::Var(_) | Expr::Const(_) => false,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.contains_sgn() || b.contains_sgn()
            }
            Expr::Neg(a) => a.contains_sgn(),
            Expr::Sgn(_) => true,
        }
    }

    fn eval_at(&self, point: &[Lc]) -> Lc {
        match self {
            Expr::Var(i) => point[*i].clone(),
            Expr::Const(c) => Lc::from(c.clone()),
            Expr::Add(a, b) => &a.eval_at(point) + &b.eval_at(point),
            Expr::Sub(a, b) => &a.eval_at(point) - &b.eval_at(point),
            Expr::Mul(a, b) => &a.eval_at(point) * &b.eval_at(point),
            Expr::Neg(a) => -a.eval_at(point),
            Expr::Sgn(a) => Lc::from(i64::from(a.eval_at(point).signum())),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_negative() => 3,
            Expr::Var(_) | Expr::Const(_) | Expr::Sgn(_) => 4,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    /// Infix text that parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Const(c) if c.is_negative() => write!(f, "-{}", c.abs()),
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_operand(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_operand(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_operand(f, a, 2)?;
                f.write_str(" * ")?;
                write_operand(f, b, 3)
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                // `-3` would reparse as a literal, and `--` reads poorly.
                if matches!(**a, Expr::Const(_) | Expr::Neg(_)) {
                    write!(f, "({a})")
                } else {
                    write_operand(f, a, 3)
                }
            }
            Expr::Sgn(a) => write!(f, "sgn({a})"),
        }
    }
}

/// An expression together with its declared arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Function {
    arity: usize,
    body: Expr,
}

impl Function {
    pub fn new(arity: usize, body: Expr) -> Result<Function> {
        if let Some(i) = body.max_var() {
            if i >= arity {
                return Err(Error::Arity { index: i + 1, arity });
            }
        }
        Ok(Function { arity, body })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &Expr {
        &self.body
    }

    pub fn contains_sgn(&self) -> bool {
        self.body.contains_sgn()
    }

    pub fn eval(&self, point: &Vector<Lc>) -> Result<Lc> {
        check_dims(point.dim(), self.arity)?;
        Ok(self.body.eval_at(point.entries()))
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body)
    }
}

pub fn parse_expr(text: &str, arity: usize) -> Result<Function> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let body = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Function::new(arity, body)
}

pub fn eval_expr(f: &Function, point: &Vector<Lc>) -> Result<Lc> {
    f.eval(point)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::add(lhs, self.term()?);
            } else if self.eat(b'-') {
                lhs = Expr::sub(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::mul(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            // A minus directly before a literal is part of the literal.
            if self.peek().is_some_and(|b| b.is_ascii_digit()) && self.src[self.pos - 1] == b'-' {
                if let Expr::Const(c) = self.number()? {
                    return Ok(Expr::Const(-c));
                }
            }
            return Ok(Expr::neg(self.unary()?));
        }
        self.primary()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default()
    }

    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let numer = self.digits().to_string();
        let mut text = numer;
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let denom = self.digits();
            if denom.is_empty() {
                return Err(self.error("expected denominator after '/'"));
            }
            text = format!("{text}/{denom}");
        }
        let value: Rat = text.parse().map_err(|_| Error::Syntax {
            pos: start,
            message: format!("invalid rational literal {text:?}"),
        })?;
        Ok(Expr::Const(value))
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => self.number(),
            Some(b'x') => {
                let start = self.pos;
                self.pos += 1;
                let idx = self.digits();
                let index: usize = idx.parse().map_err(|_| Error::Syntax {
                    pos: start,
                    message: "expected variable index after 'x'".to_string(),
                })?;
                if index == 0 {
                    return Err(Error::Syntax {
                        pos: start,
                        message: "variables are numbered from x1".to_string(),
                    });
                }
                Ok(Expr::Var(index - 1))
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sgn") => {
                self.pos += 3;
                if !self.eat(b'(') {
                    return Err(self.error("expected '(' after sgn"));
                }
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(Expr::sgn(inner))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// The named functions whose continuity is established as theorems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    /// `x1 + ... + xn`.
    Sum(usize),
    /// `x1 * x2`.
    Prod2,
    /// `c1*x1 + ... + cn*xn` for fixed `c`.
    DotFixed(Vec<Rat>),
}

impl Builtin {
    pub fn function(&self) -> Function {
        let (arity, body) = match self {
            Builtin::Sum(n) => {
                let body = (0..*n)
                    .map(Expr::Var)
                    .reduce(Expr::add)
                    .unwrap_or_else(|| Expr::constant(0));
                (*n, body)
            }
            Builtin::Prod2 => (2, Expr::mul(Expr::Var(0), Expr::Var(1))),
            Builtin::DotFixed(c) => {
                let body = c
                    .iter()
                    .enumerate()
                    .map(|(i, ci)| Expr::mul(Expr::Const(ci.clone()), Expr::Var(i)))
                    .reduce(Expr::add)
                    .unwrap_or_else(|| Expr::constant(0));
                (c.len(), body)
            }
        };
        Function { arity, body }
    }
}

pub fn builtin(b: &Builtin) -> Function {
    b.function()
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Sum(n) => write!(f, "sum({n})"),
            Builtin::Prod2 => write!(f, "prod2"),
            Builtin::DotFixed(c) => {
                write!(f, "dot_fixed(")?;
                for (i, ci) in c.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{ci}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// `sum(3)`, `prod2`, `dot_fixed(2, -1)`.
    fn from_str(s: &str) -> Result<Builtin> {
        let s = s.trim();
        let bad = |message: &str| Error::Syntax {
            pos: 0,
            message: format!("{message}: {s:?}"),
        };
        if s == "prod2" {
            return Ok(Builtin::Prod2);
        }
        let (name, rest) = s.split_once('(').ok_or_else(|| bad("unknown builtin"))?;
        let args = rest.strip_suffix(')').ok_or_else(|| bad("expected ')'"))?;
        match name.trim() {
            "sum" => args
                .trim()
                .parse()
                .map(Builtin::Sum)
                .map_err(|_| bad("sum expects a nonnegative arity")),
            "dot_fixed" => {
                let coeffs = args
                    .split(',')
                    .map(str::trim)
                    .filter(|a| !a.is_empty())
                    .map(|a| a.parse::<Rat>().map_err(|_| bad("invalid coefficient")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Builtin::DotFixed(coeffs))
            }
            _ => Err(bad("unknown builtin")),
        }
    }
}

/// Outcome of one continuity probe at a standard point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub point: Vector<Rat>,
    pub direction: Vector<Rat>,
    pub order: u32,
    /// `f(x) - f(x + εᵏ·h)`.
    pub diff: Lc,
    pub metric_sq_small: bool,
    pub diff_small: bool,
    pub inputs_limited: bool,
}

impl ProbeResult {
    /// Infinitesimally close inputs with a non-infinitesimal change in value.
    pub fn is_violation(&self) -> bool {
        self.metric_sq_small && !self.diff_small
    }
}

pub fn probe(f: &Function, x: &Vector<Rat>, h: &Vector<Rat>, order: u32) -> Result<ProbeResult> {
    check_dims(x.dim(), f.arity())?;
    check_dims(h.dim(), f.arity())?;
    if h.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if order == 0 {
        return Err(Error::Domain("probe order must be at least 1"));
    }
    let nudge = Lc::monomial(Rat::one(), i64::from(order));
    let xs: Vector<Lc> = x.map(|c| Lc::from(c.clone()));
    let ys: Vector<Lc> = x
        .entries()
        .iter()
        .zip(h.entries())
        .map(|(xi, hi)| &Lc::from(xi.clone()) + &nudge.scale(hi))
        .collect::<Vec<_>>()
        .into();
    let diff = &f.eval(&xs)? - &f.eval(&ys)?;
    let inputs_limited = xs
        .entries()
        .iter()
        .chain(ys.entries())
        .all(Lc::is_i_limited);
    Ok(ProbeResult {
        point: x.clone(),
        direction: h.clone(),
        order,
        metric_sq_small: metric_sq(&xs, &ys)?.is_i_small(),
        diff_small: diff.is_i_small(),
        diff,
        inputs_limited,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntriesSmall {
    pub metric_small: bool,
    pub entry_small: Vec<bool>,
}

/// Compares i-smallness of `metric²(x, y)` with that of each `xᵢ - yᵢ`.
///
/// `metric²` stands in for the metric since `d ≥ 0` is i-small iff `d²` is.
/// A small metric with a non-small entry difference is a logic fault.
pub fn entries_small_check(x: &Vector<Lc>, y: &Vector<Lc>) -> Result<EntriesSmall> {
    let diff = x.sub(y)?;
    let metric_small = diff.norm_sq().is_i_small();
    let entry_small: Vec<bool> = diff.entries().iter().map(Lc::is_i_small).collect();
    if metric_small && !entry_small.iter().all(|b| *b) {
        return Err(Error::LogicFault(format!(
            "i-small metric with a non-small entry for x = {x}, y = {y}"
        )));
    }
    Ok(EntriesSmall {
        metric_small,
        entry_small,
    })
}
