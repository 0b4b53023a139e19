//! Recursive-descent parser for system descriptions such as
//! `dw/dz = (z^2 + m*w) / (z + w^2); m = 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::rational::fmt_rational;
use crate::arith::{Poly2, Rational};
use crate::error::{Error, ParseError, Result};
use crate::poly_ode::OdeSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Form {
    /// `dw/dz = P/Q`.
    #[serde(rename = "pq")]
    PQ,
    /// `dz/dt = ..., dw/dt = ...`.
    Autonomous,
    /// `dw/dz = P/Q` with `z` dividing `Q`.
    AxisForm,
}

#[derive(Clone, Debug)]
pub struct ParsedSystem {
    pub form: Form,
    /// Numerator of `dw/dz`.
    pub p: Poly2,
    /// Denominator of `dw/dz`.
    pub q: Poly2,
    pub params: BTreeMap<String, Rational>,
    pub system: OdeSystem,
}

impl ParsedSystem {
    /// `(ż, ẇ)` of the associated vector field.
    pub fn vector_field(&self) -> (Poly2, Poly2) {
        (self.q.clone(), self.p.clone())
    }

    /// Text that parses back to the same system.
    pub fn to_text(&self) -> String {
        match self.form {
            Form::Autonomous => format!("dz/dt = {}; dw/dt = {}", self.q, self.p),
            _ => format!("dw/dz = ({}) / ({})", self.p, self.q),
        }
    }

    pub fn from_polys(form: Form, p: Poly2, q: Poly2) -> Result<ParsedSystem> {
        let system = OdeSystem::from_poly2(&p, &q)?;
        let form = match form {
            Form::PQ if divisible_by_z(&q) => Form::AxisForm,
            f => f,
        };
        Ok(ParsedSystem { form, p, q, params: BTreeMap::new(), system })
    }
}

fn divisible_by_z(q: &Poly2) -> bool {
    !q.is_zero() && q.terms().all(|(&(i, _), _)| i > 0)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ratio(Rational),
    Ident(String),
    Deriv(&'static str),
    Sym(char),
    Sep,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> std::result::Result<T, ParseError> {
    Err(ParseError { line, column: col, message: msg.into() })
}

fn lex(text: &str) -> std::result::Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: tl, col: tc });
        if c == '\n' || c == ';' {
            push(&mut out, Tok::Sep);
            i += 1;
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 5)].iter().collect();
        if let Some(d) = ["dw/dz", "dz/dt", "dw/dt"].into_iter().find(|d| rest == *d) {
            push(&mut out, Tok::Deriv(d));
            i += 5;
            col += 5;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let s2 = i + 1;
                let mut j = s2;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let den: BigInt = chars[s2..j].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return err(tl, tc, "zero denominator in rational literal");
                }
                push(&mut out, Tok::Ratio(Rational::new(num, den)));
                col += j - start;
                i = j;
            } else {
                push(&mut out, Tok::Int(num));
                col += i - start;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            push(&mut out, Tok::Ident(chars[start..i].iter().collect()));
            col += i - start;
            continue;
        }
        if "+-*^()=/,".contains(c) {
            push(&mut out, Tok::Sym(c));
            i += 1;
            col += 1;
            continue;
        }
        return err(tl, tc, format!("unexpected character `{c}`"));
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Rational),
    Z,
    W,
    Param(String, usize, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> std::result::Result<(), ParseError> {
        if self.at_sym(c) {
            self.bump();
            Ok(())
        } else {
            let t = self.peek();
            err(t.line, t.col, format!("expected `{c}`, found {}", describe(&t.tok)))
        }
    }

    fn skip_seps(&mut self) {
        while self.peek().tok == Tok::Sep {
            self.bump();
        }
    }

    fn poly(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut e = self.term()?;
        loop {
            if self.at_sym('+') {
                self.bump();
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.at_sym('-') {
                self.bump();
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut e = self.factor()?;
        while self.at_sym('*') {
            self.bump();
            e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.at_sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        if self.at_sym('+') {
            self.bump();
            return self.factor();
        }
        let base = self.atom()?;
        if self.at_sym('^') {
            self.bump();
            let t = self.bump();
            let Tok::Int(n) = &t.tok else {
                return err(t.line, t.col, "exponent must be a nonnegative integer");
            };
            let n: u32 = n.try_into().or_else(|_| err(t.line, t.col, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => Ok(Expr::Num(Rational::from_integer(n))),
            Tok::Ratio(r) => Ok(Expr::Num(r)),
            Tok::Ident(s) if s == "z" => Ok(Expr::Z),
            Tok::Ident(s) if s == "w" => Ok(Expr::W),
            Tok::Ident(s) => Ok(Expr::Param(s, t.line, t.col)),
            Tok::Sym('(') => {
                let e = self.poly()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            other => err(t.line, t.col, format!("expected a term, found {}", describe(&other))),
        }
    }

    fn signed_rational(&mut self) -> std::result::Result<Rational, ParseError> {
        let neg = if self.at_sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let t = self.bump();
        let v = match t.tok {
            Tok::Int(n) => Rational::from_integer(n),
            Tok::Ratio(r) => r,
            other => return err(t.line, t.col, format!("expected a rational value, found {}", describe(&other))),
        };
        Ok(if neg { -v } else { v })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ratio(r) => format!("`{}`", fmt_rational(r)),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Deriv(d) => format!("`{d}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::Sep => "end of statement".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn eval(e: &Expr, params: &BTreeMap<String, Rational>) -> std::result::Result<Poly2, ParseError> {
    Ok(match e {
        Expr::Num(r) => Poly2::constant(r.clone()),
        Expr::Z => Poly2::z(),
        Expr::W => Poly2::w(),
        Expr::Param(name, l, c) => match params.get(name) {
            Some(v) => Poly2::constant(v.clone()),
            None => return err(*l, *c, format!("unbound parameter `{name}`")),
        },
        Expr::Add(a, b) => &eval(a, params)? + &eval(b, params)?,
        Expr::Sub(a, b) => &eval(a, params)? - &eval(b, params)?,
        Expr::Mul(a, b) => &eval(a, params)? * &eval(b, params)?,
        Expr::Neg(a) => -&eval(a, params)?,
        Expr::Pow(a, n) => eval(a, params)?.pow(*n),
    })
}

/// Parses a system description; see the crate README for the grammar.
pub fn parse_system(text: &str) -> Result<ParsedSystem> {
    let mut ps = Parser { toks: lex(text)?, pos: 0 };
    ps.skip_seps();
    let t = ps.bump();
    let (form, p_expr, q_expr) = match t.tok {
        Tok::Deriv("dw/dz") => {
            ps.expect_sym('=')?;
            let p = ps.poly()?;
            let q = if ps.at_sym('/') {
                ps.bump();
                ps.poly()?
            } else {
                Expr::Num(Rational::from_integer(1.into()))
            };
            (Form::PQ, p, q)
        }
        Tok::Deriv(first @ ("dz/dt" | "dw/dt")) => {
            ps.expect_sym('=')?;
            let a = ps.poly()?;
            ps.skip_seps();
            let t2 = ps.bump();
            let second = if first == "dz/dt" { "dw/dt" } else { "dz/dt" };
            if t2.tok != Tok::Deriv(second) {
                return Err(ParseError { line: t2.line, column: t2.col, message: format!("expected `{second}`") }.into());
            }
            ps.expect_sym('=')?;
            let b = ps.poly()?;
            let (zdot, wdot) = if first == "dz/dt" { (a, b) } else { (b, a) };
            (Form::Autonomous, wdot, zdot)
        }
        other => {
            return Err(ParseError {
                line: t.line,
                column: t.col,
                message: format!("expected `dw/dz` or `dz/dt`, found {}", describe(&other)),
            }
            .into())
        }
    };
    let nt = ps.peek();
    if !matches!(nt.tok, Tok::Sep | Tok::Eof) {
        let hint = if matches!(nt.tok, Tok::Ident(_) | Tok::Int(_) | Tok::Sym('(')) { " (use `*` for products)" } else { "" };
        return Err(ParseError { line: nt.line, column: nt.col, message: format!("unexpected {}{hint}", describe(&nt.tok)) }.into());
    }
    let mut params = BTreeMap::new();
    loop {
        let t = ps.peek().clone();
        match t.tok {
            Tok::Eof => break,
            Tok::Sep => {
                ps.skip_seps();
                continue;
            }
            Tok::Ident(name) => {
                ps.bump();
                if name == "z" || name == "w" {
                    return Err(ParseError { line: t.line, column: t.col, message: format!("cannot bind variable `{name}`") }.into());
                }
                ps.expect_sym('=')?;
                let v = ps.signed_rational()?;
                if params.insert(name.clone(), v).is_some() {
                    return Err(ParseError { line: t.line, column: t.col, message: format!("parameter `{name}` bound twice") }.into());
                }
                let nt = ps.peek();
                if !matches!(nt.tok, Tok::Sep | Tok::Eof) {
                    return Err(ParseError { line: nt.line, column: nt.col, message: format!("unexpected {}", describe(&nt.tok)) }.into());
                }
            }
            other => {
                return Err(ParseError { line: t.line, column: t.col, message: format!("unexpected {}", describe(&other)) }.into())
            }
        }
    }
    let p = eval(&p_expr, &params)?;
    let q = eval(&q_expr, &params)?;
    if q.is_zero() {
        return Err(Error::Invalid("denominator is zero".into()));
    }
    let mut parsed = ParsedSystem::from_polys(form, p, q)?;
    parsed.params = params;
    Ok(parsed)
}
