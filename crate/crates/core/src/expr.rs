//! A small expression language for defining surfaces and curves.
//!
//! Grammar (EBNF; whitespace insensitive, no implicit multiplication):
//!
//! ```text
//! expr     := term   { ("+" | "-") term }
//! term     := factor { ("*" | "/") factor }
//! factor   := "-" factor | power
//! power    := atom [ "^" exponent ]
//! exponent := [ "-" ] integer-literal
//! atom     := number | name | func "(" expr ")" | "(" expr ")"
//! func     := "sin" | "cos" | "sinh" | "cosh" | "exp" | "ln" | "sqrt"
//! name     := "x" | "y" | "t" | "pi" | "e"
//! ```
//!
//! Precedence: `^` binds tighter than unary `-`, which binds tighter than
//! `*` `/`, which bind tighter than `+` `-`; binary operators associate to
//! the left; `^` does not chain (write `(x^2)^3`). Exponents are literal
//! integers (possibly negative); general powers go through `exp`/`ln`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet2;

/// Variables an expression may reference; which ones are legal depends on the
/// context (surfaces: x, y; curves: t).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    T,
}

/// Built-in elementary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
    Ln,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Natural cubic spline on a uniform knot grid; used to embed tabulated
/// antiderivatives into expressions. C², so order-2 jets of the interpolant
/// are exact.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline1 {
    lo: f64,
    h: f64,
    vals: Vec<f64>,
    /// Second derivatives at the knots (natural boundary: zero at the ends).
    second: Vec<f64>,
}

impl Spline1 {
    /// Build the natural cubic spline through `vals[i]` at `lo + i·h`.
    pub fn natural(lo: f64, h: f64, vals: Vec<f64>) -> Self {
        let n = vals.len();
        assert!(n >= 2 && h > 0.0, "spline needs at least two knots");
        let mut second = vec![0.0; n];
        if n > 2 {
            // Tridiagonal system for interior second derivatives
            // (h/6)m[i-1] + (2h/3)m[i] + (h/6)m[i+1] = (v[i+1]-2v[i]+v[i-1])/h
            let m = n - 2;
            let mut diag = vec![2.0 * h / 3.0; m];
            let off = h / 6.0;
            let mut rhs: Vec<f64> = (1..n - 1)
                .map(|i| (vals[i + 1] - 2.0 * vals[i] + vals[i - 1]) / h)
                .collect();
            // Thomas algorithm.
            for i in 1..m {
                let w = off / diag[i - 1];
                diag[i] -= w * off;
                rhs[i] -= w * rhs[i - 1];
            }
            second[m] = rhs[m - 1] / diag[m - 1];
            for i in (0..m - 1).rev() {
                second[i + 1] = (rhs[i] - off * second[i + 2]) / diag[i];
            }
        }
        Spline1 { lo, h, vals, second }
    }

    /// Lower end of the knot range.
    pub fn lo(&self) -> f64 {
        self.lo
    }

    /// Upper end of the knot range.
    pub fn hi(&self) -> f64 {
        self.lo + self.h * (self.vals.len() - 1) as f64
    }

    /// Value and first two derivatives at `s`; errors outside the knot range.
    pub fn eval012(&self, s: f64) -> Result<(f64, f64, f64)> {
        let hi = self.hi();
        // Tolerate tiny excursions from rounding at the ends.
        let pad = 1e-12 * (1.0 + hi.abs().max(self.lo.abs()));
        if s < self.lo - pad || s > hi + pad {
            return Err(Error::Domain { func: "spline", value: s });
        }
        let n = self.vals.len();
        let mut i = ((s - self.lo) / self.h).floor() as isize;
        i = i.clamp(0, n as isize - 2);
        let i = i as usize;
        let t0 = self.lo + self.h * i as f64;
        let a = (t0 + self.h - s) / self.h;
        let b = (s - t0) / self.h;
        let (y0, y1) = (self.vals[i], self.vals[i + 1]);
        let (m0, m1) = (self.second[i], self.second[i + 1]);
        let h2 = self.h * self.h;
        let v = a * y0
            + b * y1
            + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h2 / 6.0;
        let d1 = (y1 - y0) / self.h
            - ((3.0 * a * a - 1.0) * m0 - (3.0 * b * b - 1.0) * m1) * self.h / 6.0;
        let d2 = a * m0 + b * m1;
        Ok((v, d1, d2))
    }
}

/// Expression AST.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power of a subexpression.
    Pow(Box<Expr>, i32),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
    /// Tabulated function of a subexpression (not produced by the parser and
    /// printed as an opaque `<spline>` marker).
    Spline(Arc<Spline1>, Box<Expr>),
}

/// Parse failure, with the byte offset into the source text.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: &'static str },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { offset: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            '+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, start));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            _ if c.is_ascii_digit() || c == '.' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                    j += 1;
                }
                if j < bytes.len() && bytes[j] == b'.' {
                    j += 1;
                    while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                        j += 1;
                    }
                }
                if j < bytes.len() && (bytes[j] == b'e' || bytes[j] == b'E') {
                    let mut k = j + 1;
                    if k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-') {
                        k += 1;
                    }
                    if k < bytes.len() && (bytes[k] as char).is_ascii_digit() {
                        j = k;
                        while j < bytes.len() && (bytes[j] as char).is_ascii_digit() {
                            j += 1;
                        }
                    }
                }
                let text = &src[start..j];
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    offset: start,
                    expected: "a number",
                })?;
                toks.push((Tok::Num(value), start));
                i = j;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len()
                    && ((bytes[j] as char).is_ascii_alphanumeric() || bytes[j] == b'_')
                {
                    j += 1;
                }
                toks.push((Tok::Ident(src[start..j].to_string()), start));
                i = j;
            }
            _ => {
                return Err(ParseError::Syntax {
                    offset: start,
                    expected: "a number, a name, an operator, or parentheses",
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    allowed: &'a [Var],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, o)| o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let mut sign = 1i64;
            if matches!(self.peek(), Some(Tok::Minus)) {
                self.bump();
                sign = -1;
            }
            let off = self.offset();
            match self.bump() {
                Some(Tok::Num(v)) if v.fract() == 0.0 && v.abs() <= i32::MAX as f64 => {
                    let n = sign * v as i64;
                    Ok(Expr::Pow(Box::new(base), n as i32))
                }
                _ => Err(ParseError::Syntax { offset: off, expected: "an integer exponent" }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(ParseError::Syntax { offset: self.prev_offset(), expected: "')'" }),
                }
            }
            Some(Tok::Ident(name)) => {
                let func = match name.as_str() {
                    "sin" => Some(Func::Sin),
                    "cos" => Some(Func::Cos),
                    "sinh" => Some(Func::Sinh),
                    "cosh" => Some(Func::Cosh),
                    "exp" => Some(Func::Exp),
                    "ln" => Some(Func::Ln),
                    "sqrt" => Some(Func::Sqrt),
                    _ => None,
                };
                if let Some(f) = func {
                    match self.bump() {
                        Some(Tok::LParen) => {
                            let arg = self.expr()?;
                            match self.bump() {
                                Some(Tok::RParen) => Ok(Expr::Call(f, Box::new(arg))),
                                _ => Err(ParseError::Syntax {
                                    offset: self.prev_offset(),
                                    expected: "')'",
                                }),
                            }
                        }
                        _ => Err(ParseError::Syntax {
                            offset: self.prev_offset(),
                            expected: "'(' after a function name",
                        }),
                    }
                } else {
                    let var = match name.as_str() {
                        "x" => Some(Var::X),
                        "y" => Some(Var::Y),
                        "t" => Some(Var::T),
                        "pi" => return Ok(Expr::Num(std::f64::consts::PI)),
                        "e" => return Ok(Expr::Num(std::f64::consts::E)),
                        _ => None,
                    };
                    match var {
                        Some(v) if self.allowed.contains(&v) => Ok(Expr::Var(v)),
                        _ => Err(ParseError::UnknownIdentifier { offset: off, name }),
                    }
                }
            }
            _ => Err(ParseError::Syntax { offset: off, expected: "a value" }),
        }
    }

    fn prev_offset(&self) -> usize {
        if self.pos == 0 {
            0
        } else if self.pos <= self.toks.len() {
            self.toks
                .get(self.pos - 1)
                .map(|&(_, o)| o)
                .unwrap_or(self.end)
        } else {
            self.end
        }
    }
}

fn parse_with_vars(src: &str, allowed: &[Var]) -> std::result::Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0, end: src.len(), allowed };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(ParseError::Syntax {
            offset: p.offset(),
            expected: "end of input or an operator",
        });
    }
    Ok(e)
}

/// Parse an expression that may reference any of x, y, t.
pub fn parse(src: &str) -> std::result::Result<Expr, ParseError> {
    parse_with_vars(src, &[Var::X, Var::Y, Var::T])
}

/// Parse a surface expression (variables x, y only).
pub fn parse_surface(src: &str) -> std::result::Result<Expr, ParseError> {
    parse_with_vars(src, &[Var::X, Var::Y])
}

/// Parse a curve expression (variable t only).
pub fn parse_curve(src: &str) -> std::result::Result<Expr, ParseError> {
    parse_with_vars(src, &[Var::T])
}

impl Expr {
    /// Exact order-2 jet of the expression given jets for the variables.
    pub fn eval_jet(&self, x: &Jet2, y: &Jet2, t: &Jet2) -> Result<Jet2> {
        match self {
            Expr::Num(v) => Ok(Jet2::constant(*v)),
            Expr::Var(Var::X) => Ok(*x),
            Expr::Var(Var::Y) => Ok(*y),
            Expr::Var(Var::T) => Ok(*t),
            Expr::Add(a, b) => Ok(a.eval_jet(x, y, t)?.add(&b.eval_jet(x, y, t)?)),
            Expr::Sub(a, b) => Ok(a.eval_jet(x, y, t)?.sub(&b.eval_jet(x, y, t)?)),
            Expr::Mul(a, b) => Ok(a.eval_jet(x, y, t)?.mul(&b.eval_jet(x, y, t)?)),
            Expr::Div(a, b) => a.eval_jet(x, y, t)?.div(&b.eval_jet(x, y, t)?),
            Expr::Pow(a, n) => a.eval_jet(x, y, t)?.powi(*n),
            Expr::Neg(a) => Ok(a.eval_jet(x, y, t)?.neg()),
            Expr::Call(f, a) => {
                let j = a.eval_jet(x, y, t)?;
                match f {
                    Func::Sin => Ok(j.sin()),
                    Func::Cos => Ok(j.cos()),
                    Func::Sinh => Ok(j.sinh()),
                    Func::Cosh => Ok(j.cosh()),
                    Func::Exp => Ok(j.exp()),
                    Func::Ln => j.ln(),
                    Func::Sqrt => j.sqrt(),
                }
            }
            Expr::Spline(s, a) => {
                let j = a.eval_jet(x, y, t)?;
                let (f0, f1, f2) = s.eval012(j.v)?;
                Ok(j.chain(f0, f1, f2))
            }
        }
    }

    /// Jet with respect to the surface parameters at (x0, y0).
    pub fn eval_xy(&self, x0: f64, y0: f64) -> Result<Jet2> {
        self.eval_jet(&Jet2::var_x(x0), &Jet2::var_y(y0), &Jet2::constant(0.0))
    }

    /// Jet of a curve expression at parameter `t0`; derivatives appear in the
    /// `dx`/`dxx` channels.
    pub fn eval_curve(&self, t0: f64) -> Result<Jet2> {
        self.eval_jet(
            &Jet2::constant(0.0),
            &Jet2::constant(0.0),
            &Jet2::var_x(t0),
        )
    }

    /// Plain recursive evaluation (no derivative propagation); used to
    /// cross-check the jet value channel.
    pub fn eval_value(&self, x: f64, y: f64, t: f64) -> Result<f64> {
        match self {
            Expr::Num(v) => Ok(*v),
            Expr::Var(Var::X) => Ok(x),
            Expr::Var(Var::Y) => Ok(y),
            Expr::Var(Var::T) => Ok(t),
            Expr::Add(a, b) => Ok(a.eval_value(x, y, t)? + b.eval_value(x, y, t)?),
            Expr::Sub(a, b) => Ok(a.eval_value(x, y, t)? - b.eval_value(x, y, t)?),
            Expr::Mul(a, b) => Ok(a.eval_value(x, y, t)? * b.eval_value(x, y, t)?),
            Expr::Div(a, b) => {
                let d = b.eval_value(x, y, t)?;
                if d.abs() <= crate::tol::TOL_ZERO {
                    return Err(Error::DivisionByZero);
                }
                Ok(a.eval_value(x, y, t)? / d)
            }
            Expr::Pow(a, n) => {
                let b = a.eval_value(x, y, t)?;
                if *n < 0 && b.abs() <= crate::tol::TOL_ZERO {
                    return Err(Error::DivisionByZero);
                }
                Ok(b.powi(*n))
            }
            Expr::Neg(a) => Ok(-a.eval_value(x, y, t)?),
            Expr::Call(f, a) => {
                let v = a.eval_value(x, y, t)?;
                match f {
                    Func::Sin => Ok(v.sin()),
                    Func::Cos => Ok(v.cos()),
                    Func::Sinh => Ok(v.sinh()),
                    Func::Cosh => Ok(v.cosh()),
                    Func::Exp => Ok(v.exp()),
                    Func::Ln => {
                        if v <= 0.0 {
                            Err(Error::Domain { func: "ln", value: v })
                        } else {
                            Ok(v.ln())
                        }
                    }
                    Func::Sqrt => {
                        if v <= 0.0 {
                            Err(Error::Domain { func: "sqrt", value: v })
                        } else {
                            Ok(v.sqrt())
                        }
                    }
                }
            }
            Expr::Spline(s, a) => {
                let v = a.eval_value(x, y, t)?;
                Ok(s.eval012(v)?.0)
            }
        }
    }

    /// Replace every occurrence of `var` by `repl`.
    pub fn subst_var(&self, var: Var, repl: &Expr) -> Expr {
        match self {
            Expr::Num(_) => self.clone(),
            Expr::Var(v) => {
                if *v == var {
                    repl.clone()
                } else {
                    self.clone()
                }
            }
            Expr::Add(a, b) => Expr::Add(
                Box::new(a.subst_var(var, repl)),
                Box::new(b.subst_var(var, repl)),
            ),
            Expr::Sub(a, b) => Expr::Sub(
                Box::new(a.subst_var(var, repl)),
                Box::new(b.subst_var(var, repl)),
            ),
            Expr::Mul(a, b) => Expr::Mul(
                Box::new(a.subst_var(var, repl)),
                Box::new(b.subst_var(var, repl)),
            ),
            Expr::Div(a, b) => Expr::Div(
                Box::new(a.subst_var(var, repl)),
                Box::new(b.subst_var(var, repl)),
            ),
            Expr::Pow(a, n) => Expr::Pow(Box::new(a.subst_var(var, repl)), *n),
            Expr::Neg(a) => Expr::Neg(Box::new(a.subst_var(var, repl))),
            Expr::Call(f, a) => Expr::Call(*f, Box::new(a.subst_var(var, repl))),
            Expr::Spline(s, a) => Expr::Spline(s.clone(), Box::new(a.subst_var(var, repl))),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Num(v) if *v < 0.0 => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let wrap = self.prec() < min;
        if wrap {
            write!(f, "(")?;
        }
        match self {
            Expr::Num(v) => write!(f, "{v}")?,
            Expr::Var(Var::X) => write!(f, "x")?,
            Expr::Var(Var::Y) => write!(f, "y")?,
            Expr::Var(Var::T) => write!(f, "t")?,
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 3)?;
            }
            Expr::Pow(a, n) => {
                a.fmt_prec(f, 5)?;
                write!(f, "^{n}")?;
            }
            Expr::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.fmt_prec(f, 1)?;
                write!(f, ")")?;
            }
            Expr::Spline(_, a) => {
                write!(f, "<spline>(")?;
                a.fmt_prec(f, 1)?;
                write!(f, ")")?;
            }
        }
        if wrap {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse("cos(x)").unwrap(),
            Expr::Call(Func::Cos, Box::new(Expr::Var(Var::X)))
        );
        assert_eq!(
            parse("(x+y)^2 / 2").unwrap(),
            Expr::Div(
                Box::new(Expr::Pow(
                    Box::new(Expr::Add(
                        Box::new(Expr::Var(Var::X)),
                        Box::new(Expr::Var(Var::Y))
                    )),
                    2
                )),
                Box::new(Expr::Num(2.0))
            )
        );
    }

    #[test]
    fn syntax_error_offsets() {
        assert_eq!(
            parse("x + * y"),
            Err(ParseError::Syntax { offset: 4, expected: "a value" })
        );
        assert!(matches!(
            parse("foo(x)"),
            Err(ParseError::UnknownIdentifier { offset: 0, .. })
        ));
        assert!(matches!(parse("x^y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("(x"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x y"), Err(ParseError::Syntax { offset: 2, .. })));
        // Context-restricted variables.
        assert!(matches!(
            parse_curve("x + t"),
            Err(ParseError::UnknownIdentifier { offset: 0, .. })
        ));
        assert!(matches!(
            parse_surface("t"),
            Err(ParseError::UnknownIdentifier { offset: 0, .. })
        ));
    }

    #[test]
    fn precedence_and_constants() {
        // ^ binds tighter than unary minus: -x^2 = -(x^2).
        let e = parse("-x^2").unwrap();
        assert_eq!(
            e,
            Expr::Neg(Box::new(Expr::Pow(Box::new(Expr::Var(Var::X)), 2)))
        );
        assert_eq!(e.eval_value(3.0, 0.0, 0.0).unwrap(), -9.0);
        // Negative literal exponents.
        assert_eq!(parse("x^-2").unwrap().eval_value(2.0, 0.0, 0.0).unwrap(), 0.25);
        // Named constants fold to numbers.
        assert_eq!(
            parse("pi").unwrap().eval_value(0.0, 0.0, 0.0).unwrap(),
            std::f64::consts::PI
        );
        assert_eq!(
            parse("e").unwrap().eval_value(0.0, 0.0, 0.0).unwrap(),
            std::f64::consts::E
        );
        // Left associativity.
        assert_eq!(parse("8 - 3 - 2").unwrap().eval_value(0.0, 0.0, 0.0).unwrap(), 3.0);
        assert_eq!(parse("8 / 4 / 2").unwrap().eval_value(0.0, 0.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn eval_jet_examples() {
        let j = parse("(x+y)^2/2").unwrap().eval_xy(1.0, 0.0).unwrap();
        assert_eq!(
            (j.v, j.dx, j.dy, j.dxx, j.dxy, j.dyy),
            (0.5, 1.0, 1.0, 1.0, 1.0, 1.0)
        );
        let j = parse("x").unwrap().eval_xy(4.25, -1.0).unwrap();
        assert_eq!((j.v, j.dx, j.dy, j.dxx), (4.25, 1.0, 0.0, 0.0));
        let j = parse("sinh(y)").unwrap().eval_xy(0.0, 0.0).unwrap();
        assert_eq!((j.v, j.dy, j.dyy), (0.0, 1.0, 0.0));
    }

    #[test]
    fn curve_evaluation_uses_t() {
        let a = parse_curve("t^2/2").unwrap();
        let j = a.eval_curve(3.0);
        let j = j.unwrap();
        assert_eq!((j.v, j.dx, j.dxx), (4.5, 3.0, 1.0));
        // Substitution t -> x+y turns a curve into a surface expression.
        let s = a.subst_var(
            Var::T,
            &Expr::Add(Box::new(Expr::Var(Var::X)), Box::new(Expr::Var(Var::Y))),
        );
        let j = s.eval_xy(1.0, 2.0).unwrap();
        assert_eq!((j.v, j.dx, j.dy, j.dxy), (4.5, 3.0, 3.0, 1.0));
    }

    #[test]
    fn spline_reproduces_smooth_function() {
        // Tabulate sin on [0, 2] with spacing 1/32 and compare.
        let h = 1.0 / 32.0;
        let n = 65;
        let vals: Vec<f64> = (0..n).map(|i| (h * i as f64).sin()).collect();
        let sp = Spline1::natural(0.0, h, vals);
        for k in 0..200 {
            let s = 0.03 + 1.94 * (k as f64) / 199.0;
            let (v, d1, _) = sp.eval012(s).unwrap();
            assert!((v - s.sin()).abs() <= 1e-7, "value at {s}");
            assert!((d1 - s.cos()).abs() <= 1e-4, "slope at {s}");
        }
        assert!(matches!(sp.eval012(2.5), Err(Error::Domain { .. })));
        // As an Expr node it feeds the jet chain rule.
        let e = Expr::Spline(Arc::new(sp), Box::new(Expr::Var(Var::X)));
        let j = e.eval_xy(1.0, 0.0).unwrap();
        assert!((j.v - 1.0f64.sin()).abs() <= 1e-7);
        assert!((j.dx - 1.0f64.cos()).abs() <= 1e-5);
        assert!((j.dxx + 1.0f64.sin()).abs() <= 1e-3);
        // The marker is deliberately not reparseable.
        assert!(parse(&format!("{e}")).is_err());
    }

    /// Strategy for canonical ASTs: exactly the shapes the parser produces
    /// (no negative literals; those parse as Neg).
    fn canonical_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0.0f64..100.0).prop_map(Expr::Num),
            Just(Expr::Var(Var::X)),
            Just(Expr::Var(Var::Y)),
            Just(Expr::Var(Var::T)),
        ];
        leaf.prop_recursive(5, 64, 4, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
                (inner.clone(), -3i32..5).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner, prop_oneof![
                    Just(Func::Sin), Just(Func::Cos), Just(Func::Sinh),
                    Just(Func::Cosh), Just(Func::Exp), Just(Func::Ln), Just(Func::Sqrt)
                ])
                    .prop_map(|(a, f)| Expr::Call(f, Box::new(a))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(e in canonical_expr()) {
            let s = format!("{e}");
            let back = parse(&s).expect("printer output must reparse");
            prop_assert_eq!(&back, &e);
            // Stability: printing the reparsed tree is a fixpoint.
            prop_assert_eq!(format!("{back}"), s);
        }

        #[test]
        fn jet_value_channel_matches_plain_eval(e in canonical_expr(),
                                                x in -2.0f64..2.0,
                                                y in -2.0f64..2.0,
                                                t in -2.0f64..2.0) {
            let jet = e.eval_jet(&Jet2::var_x(x), &Jet2::var_y(y), &Jet2::constant(t));
            let plain = e.eval_value(x, y, t);
            match (jet, plain) {
                (Ok(j), Ok(v)) => {
                    prop_assert!(
                        (j.v - v).abs() <= 1e-12 * (1.0 + v.abs()) || (j.v.is_nan() && v.is_nan())
                    );
                }
                (Err(_), Err(_)) => {}
                // Jets are stricter only through derivative overflow; values
                // must agree on the error side.
                (a, b) => prop_assert!(false, "jet {a:?} vs plain {b:?}"),
            }
        }
    }
}
