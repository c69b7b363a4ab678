//! Polynomial expression parser.
//!
//! Grammar (ASCII, whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' unary) | group)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | 'x' | 'y' | group
//! group  := '(' expr ')'
//! ```
//!
//! A negative exponent is accepted only directly on a variable and only when
//! parsing a bivariate (Laurent) expression.

use std::collections::BTreeMap;
use std::fmt;

use fewnomial_core::{BivarPoly, IntPoly};
use num_bigint::BigInt;

/// Exponents above this are rejected to keep expansion bounded.
pub const MAX_EXPONENT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(char),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Context {
    Univariate,
    Bivariate,
}

impl Context {
    fn allows(self, v: char) -> bool {
        match self {
            Context::Univariate => v == 'x',
            Context::Bivariate => v == 'x' || v == 'y',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    Syntax { pos: usize, message: String },
    UnknownVariable { pos: usize, name: char },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { pos, message } => write!(f, "syntax error at {pos}: {message}"),
            ParseError::UnknownVariable { pos, name } => {
                write!(f, "unknown variable '{name}' at {pos}")
            }
        }
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: Context,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(b'(') => lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?)),
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            if !(matches!(base, Expr::Var(_)) && self.ctx == Context::Bivariate) {
                return self.err("negative exponents are only allowed on x or y in a bivariate expression");
            }
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.err("expected an exponent");
        }
        let e: u64 = match digits.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => {
                self.pos = start;
                return self.err(format!("exponent exceeds {MAX_EXPONENT}"));
            }
        };
        let e = e as i64;
        Ok(Expr::Pow(Box::new(base), if negative { -e } else { e }))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                if self.src.get(self.pos) == Some(&b'.') {
                    return self.err("coefficients must be integers");
                }
                Ok(Expr::Int(d.parse().expect("digit string")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = c as char;
                if !self.ctx.allows(v) {
                    return Err(ParseError::UnknownVariable { pos: self.pos, name: v });
                }
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                    return self.err("implicit multiplication needs '*'");
                }
                Ok(Expr::Var(v))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if !c.is_ascii() => self.err("non-ASCII input"),
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expr(text: &str, ctx: Context) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ctx };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

type Laurent = BTreeMap<(i64, i64), BigInt>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for ((i, j), c) in a {
        for ((k, l), d) in b {
            *out.entry((i + k, j + l)).or_default() += c * d;
        }
    }
    out.retain(|_, c| *c != BigInt::from(0));
    out
}

fn laurent_add(mut a: Laurent, b: Laurent, sign: i32) -> Laurent {
    for (k, c) in b {
        *a.entry(k).or_default() += c * sign;
    }
    a.retain(|_, c| *c != BigInt::from(0));
    a
}

fn laurent_pow(a: &Laurent, mut e: u64) -> Laurent {
    let mut base = a.clone();
    let mut acc = Laurent::from([((0, 0), BigInt::from(1))]);
    while e > 0 {
        if e & 1 == 1 {
            acc = laurent_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = laurent_mul(&base, &base);
        }
    }
    acc
}

fn eval(e: &Expr) -> Laurent {
    match e {
        Expr::Int(n) => {
            let mut m = Laurent::new();
            if *n != BigInt::from(0) {
                m.insert((0, 0), n.clone());
            }
            m
        }
        Expr::Var(v) => Laurent::from([(if *v == 'x' { (1, 0) } else { (0, 1) }, BigInt::from(1))]),
        Expr::Neg(a) => eval(a).into_iter().map(|(k, c)| (k, -c)).collect(),
        Expr::Add(a, b) => laurent_add(eval(a), eval(b), 1),
        Expr::Sub(a, b) => laurent_add(eval(a), eval(b), -1),
        Expr::Mul(a, b) => laurent_mul(&eval(a), &eval(b)),
        Expr::Pow(a, k) if *k < 0 => {
            eval(a).into_iter().map(|((i, j), c)| ((i * k, j * k), c)).collect()
        }
        Expr::Pow(a, k) => laurent_pow(&eval(a), *k as u64),
    }
}

/// Parses a univariate polynomial in `x`.
pub fn parse_poly(text: &str) -> Result<IntPoly, ParseError> {
    let e = parse_expr(text, Context::Univariate)?;
    let terms = eval(&e);
    let deg = terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
    let mut coeffs = vec![BigInt::from(0); deg + 1];
    for ((i, _), c) in terms {
        coeffs[i as usize] = c;
    }
    Ok(IntPoly::new(coeffs))
}

/// Parses a Laurent polynomial in `x, y` and clears denominators.
pub fn parse_bivar(text: &str) -> Result<BivarPoly, ParseError> {
    let e = parse_expr(text, Context::Bivariate)?;
    let terms = eval(&e).into_iter().map(|((i, j), c)| (i, j, c)).collect();
    Ok(BivarPoly::new(terms).normalize())
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Int(_) | Expr::Var(_) => 5,
    }
}

fn render_at(e: &Expr, min: u8, out: &mut String) {
    let paren = prec(e) < min;
    if paren {
        out.push('(');
    }
    match e {
        Expr::Int(n) => out.push_str(&n.to_string()),
        Expr::Var(v) => out.push(*v),
        Expr::Neg(a) => {
            out.push('-');
            render_at(a, 3, out);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            render_at(a, 1, out);
            out.push(if matches!(e, Expr::Add(..)) { '+' } else { '-' });
            render_at(b, 2, out);
        }
        Expr::Mul(a, b) => {
            render_at(a, 2, out);
            out.push('*');
            render_at(b, 3, out);
        }
        Expr::Pow(a, k) => {
            render_at(a, 5, out);
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
    if paren {
        out.push(')');
    }
}

/// Renders with the fewest parentheses that parse back to the same tree.
pub fn render(e: &Expr) -> String {
    let mut s = String::new();
    render_at(e, 0, &mut s);
    s
}
