//! Text syntax for polynomials.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := name | integer | integer '/' positive-integer | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. The optional leading sign lets printed
//! polynomials such as `- y` parse back.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::polynomial::{Polynomial, Rational};
use super::ring::RingRef;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Name(n) => write!(f, "{n}"),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Caret => f.write_str("^"),
            Tok::Slash => f.write_str("/"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push((Tok::Num(s.parse().expect("digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Name(chars[start..i].iter().collect()), pos));
            continue;
        }
        return Err(Error::parse(line, col, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    ring: &'a RingRef,
    end: Pos,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let p = self.pos();
        Err(Error::parse(p.line, p.column, msg))
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let n = match self.peek() {
                Some(Tok::Num(n)) => n.clone(),
                _ => return self.err("exponent must be a non-negative integer literal"),
            };
            let n: u32 = match u32::try_from(&n) {
                Ok(n) => n,
                Err(_) => return self.err("exponent too large"),
            };
            self.bump();
            return base.pow(n);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Name(name)) => {
                let Some(i) = self.ring.index_of(&name) else {
                    return self.err(format!("unknown identifier `{name}`"));
                };
                self.bump();
                Ok(Polynomial::monomial(
                    self.ring,
                    Rational::one(),
                    Monomial::var(self.ring.nvars(), i, 1),
                ))
            }
            Some(Tok::Num(n)) => {
                self.bump();
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    let d = match self.peek() {
                        Some(Tok::Num(d)) if d.is_positive() => d.clone(),
                        _ => return self.err("denominator must be a positive integer literal"),
                    };
                    self.bump();
                    return Ok(Polynomial::constant(self.ring, Rational::new(n, d)));
                }
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.bump();
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(t) => self.err(format!("unexpected `{t}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    let end = end_pos(text);
    let mut p = Parser {
        toks,
        at: 0,
        ring,
        end,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        let t = t.clone();
        return p.err(format!("unexpected `{t}`"));
    }
    Ok(e)
}

fn end_pos(text: &str) -> Pos {
    let line = text.matches('\n').count() + 1;
    let column = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Pos { line, column }
}

/// Re-spaces a source expression without changing its structure: binary
/// `+`/`-` get surrounding spaces, everything else is tight.
pub fn normalize_expression_text(text: &str) -> Result<String> {
    let toks = tokenize(text)?;
    let mut out = String::new();
    let mut prev_operand = false;
    for (t, _) in &toks {
        match t {
            Tok::Plus | Tok::Minus if prev_operand => {
                out.push_str(&format!(" {t} "));
                prev_operand = false;
            }
            Tok::Plus | Tok::Minus => {
                out.push_str(&t.to_string());
                prev_operand = false;
            }
            Tok::Num(_) | Tok::Name(_) | Tok::RParen => {
                out.push_str(&t.to_string());
                prev_operand = true;
            }
            _ => {
                out.push_str(&t.to_string());
                prev_operand = false;
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring().vars();
        for (k, t) in self.terms().iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (k, neg) {
                (0, false) => {}
                (0, true) => f.write_str("- ")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            let c = t.coeff.abs();
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() || t.mono.is_one() {
                factors.push(if c.is_integer() {
                    c.numer().to_string()
                } else {
                    format!("{}/{}", c.numer(), c.denom())
                });
            }
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

/// Deterministic, re-parseable rendering in descending term order.
pub fn print_polynomial(p: &Polynomial) -> String {
    p.to_string()
}
