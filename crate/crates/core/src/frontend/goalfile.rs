//! Line-oriented goal files.
//!
//! ```text
//! # comment
//! vars x y
//! mode R
//! hyp x^2 + x*y = 0
//! hyp y^2 + x*y = 0
//! concl x + y = 0
//! ```
//!
//! Hypotheses and conclusions are `p = q`, `p <> q`, or one of the
//! predicates `divides(a, b)`, `modulo(a, b, p)`, `ideal(x, a, b)`,
//! `gcd(g, a, b)`, `coprime(a, b)`.

use super::arith::{unfold, ArithPredicate, PredicateKind, Unfolded};
use super::{Equation, Polarity, ProblemStatement};
use crate::certificate::Mode;
use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring, RingRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    Equation(Equation),
    Predicate(ArithPredicate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Equation(Equation),
    Predicate(ArithPredicate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goal {
    pub mode: Mode,
    pub ring: RingRef,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: Option<Conclusion>,
}

impl Goal {
    /// The same goal over a ring with a different monomial order.
    pub fn with_order(&self, order: &MonomialOrder) -> Result<Goal> {
        if self.ring.order() == order {
            return Ok(self.clone());
        }
        let ring = self.ring.with_order(order.clone())?;
        let hypotheses = self
            .hypotheses
            .iter()
            .map(|h| {
                Ok(match h {
                    Hypothesis::Equation(e) => Hypothesis::Equation(e.lift(&ring)?),
                    Hypothesis::Predicate(p) => Hypothesis::Predicate(p.lift(&ring)?),
                })
            })
            .collect::<Result<_>>()?;
        let conclusion = match &self.conclusion {
            None => None,
            Some(Conclusion::Equation(e)) => Some(Conclusion::Equation(e.lift(&ring)?)),
            Some(Conclusion::Predicate(p)) => Some(Conclusion::Predicate(p.lift(&ring)?)),
        };
        Ok(Goal {
            mode: self.mode,
            ring,
            hypotheses,
            conclusion,
        })
    }

    pub(crate) fn unfold_hypotheses(&self) -> Result<Unfolded> {
        let mut eqs = Vec::new();
        let mut preds = Vec::new();
        for (i, h) in self.hypotheses.iter().enumerate() {
            match h {
                Hypothesis::Equation(e) => eqs.push((i, e.clone())),
                Hypothesis::Predicate(p) => preds.push((i, p.clone())),
            }
        }
        unfold(&self.ring, &eqs, &preds)
    }

    /// The equational statement; predicate hypotheses are unfolded with
    /// their witnesses as new variables.
    pub fn to_statement(&self) -> Result<ProblemStatement> {
        let conclusion = match &self.conclusion {
            Some(Conclusion::Equation(e)) => e,
            Some(Conclusion::Predicate(_)) => {
                return Err(Error::InvalidArgument("the conclusion is a predicate".into()));
            }
            None => return Err(Error::InvalidArgument("the goal has no conclusion".into())),
        };
        let u = self.unfold_hypotheses()?;
        Ok(ProblemStatement {
            mode: self.mode,
            conclusion: conclusion.lift(&u.ring)?,
            ring: u.ring,
            hypotheses: u.equations,
        })
    }

    /// Hypothesis residuals, for goals whose hypotheses are all equations.
    pub fn hypothesis_polynomials(&self) -> Result<Vec<Polynomial>> {
        self.hypotheses
            .iter()
            .map(|h| match h {
                Hypothesis::Equation(e) if e.polarity == Polarity::Equal => Ok(e.residual().clone()),
                Hypothesis::Equation(_) => Err(Error::UnsupportedGoal("inequation among the hypotheses".into())),
                Hypothesis::Predicate(p) => Err(Error::UnsupportedGoal(format!(
                    "predicate hypothesis `{}`",
                    p.display()
                ))),
            })
            .collect()
    }
}

fn char_col(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// Shifts a parse error reported inside `text` to its place in the file.
fn shift(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => Error::parse(line, col + column - 1, message),
        other => other,
    }
}

/// Byte offset of the first `name(` predicate call in `s`, if any.
fn find_predicate_call(s: &str) -> Option<(usize, &'static str)> {
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() || b[i] == b'_' {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let word = &s[start..i];
            let rest = s[i..].trim_start();
            if let Some(k) = PredicateKind::from_name(word) {
                if rest.starts_with('(') {
                    return Some((start, k.name()));
                }
            }
        } else {
            i += 1;
        }
    }
    None
}

struct LineCtx<'a> {
    line: &'a str,
    number: usize,
    ring: &'a RingRef,
}

impl LineCtx<'_> {
    fn err(&self, byte: usize, msg: impl Into<String>) -> Error {
        Error::parse(self.number, char_col(self.line, byte), msg)
    }

    /// Parses `line[start..end]` as a polynomial, rejecting predicate calls.
    fn poly(&self, start: usize, end: usize) -> Result<(Polynomial, String)> {
        let text = &self.line[start..end];
        if let Some((at, name)) = find_predicate_call(text) {
            return Err(self.err(start + at, format!("predicate `{name}` cannot appear inside an expression")));
        }
        if text.trim().is_empty() {
            return Err(self.err(start, "expected a polynomial"));
        }
        let p = parse_polynomial(text, self.ring).map_err(|e| shift(e, self.number, char_col(self.line, start)))?;
        Ok((p, text.trim().to_string()))
    }

    /// `start..end` hold an equation or a predicate.
    fn statement(&self, start: usize, end: usize) -> Result<Statement> {
        let body = &self.line[start..end];
        let lead = body.len() - body.trim_start().len();
        if let Some((0, name)) = find_predicate_call(&body[lead..]) {
            return self.predicate(start + lead, end, name);
        }
        // top-level relation
        let b = body.as_bytes();
        let mut depth = 0i32;
        let mut rel: Option<(usize, usize, Polarity)> = None;
        let mut i = 0;
        while i < b.len() {
            match b[i] {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'<' if depth == 0 && b.get(i + 1) == Some(&b'>') => {
                    if rel.is_some() {
                        return Err(self.err(start + i, "more than one relation"));
                    }
                    rel = Some((i, 2, Polarity::NotEqual));
                    i += 1;
                }
                b'=' if depth == 0 => {
                    if rel.is_some() {
                        return Err(self.err(start + i, "more than one relation"));
                    }
                    rel = Some((i, 1, Polarity::Equal));
                }
                _ => {}
            }
            i += 1;
        }
        let Some((at, width, polarity)) = rel else {
            return Err(self.err(start, "expected `=`, `<>` or a predicate"));
        };
        let (lhs, ls) = self.poly(start, start + at)?;
        let (rhs, rs) = self.poly(start + at + width, end)?;
        Ok(Statement::Equation(Equation::with_sources(lhs, rhs, polarity, &ls, &rs)?))
    }

    fn predicate(&self, start: usize, end: usize, name: &str) -> Result<Statement> {
        let kind = PredicateKind::from_name(name).expect("known predicate");
        let open = start + self.line[start..end].find('(').expect("call has `(`");
        let b = self.line.as_bytes();
        let mut depth = 0i32;
        let mut close = None;
        let mut commas = Vec::new();
        for (i, &c) in b.iter().enumerate().take(end).skip(open) {
            match c {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(i);
                        break;
                    }
                }
                b',' if depth == 1 => commas.push(i),
                _ => {}
            }
        }
        let Some(close) = close else {
            return Err(self.err(open, "unclosed `(`"));
        };
        if !self.line[close + 1..end].trim().is_empty() {
            return Err(self.err(close + 1, "predicates cannot be combined with other operators"));
        }
        let mut bounds = vec![open + 1];
        for &c in &commas {
            bounds.push(c + 1);
        }
        let mut args = Vec::new();
        let mut srcs = Vec::new();
        for (k, &a) in bounds.iter().enumerate() {
            let z = commas.get(k).copied().unwrap_or(close);
            let (p, s) = self.poly(a, z)?;
            args.push(p);
            srcs.push(s);
        }
        if args.len() != kind.arity() {
            return Err(self.err(
                start,
                format!("`{name}` takes {} arguments, got {}", kind.arity(), args.len()),
            ));
        }
        let p = ArithPredicate::with_sources(kind, args, srcs).map_err(|e| match e {
            Error::NonIntegral(what) => self.err(start, format!("non-integer coefficient in `{what}`")),
            other => other,
        })?;
        Ok(Statement::Predicate(p))
    }
}

enum Statement {
    Equation(Equation),
    Predicate(ArithPredicate),
}

/// Parses a goal file. The ring uses grevlex; see [`Goal::with_order`].
pub fn parse_goal(text: &str) -> Result<Goal> {
    let mut ring: Option<RingRef> = None;
    let mut mode: Option<(Mode, usize)> = None;
    let mut hypotheses = Vec::new();
    let mut conclusion: Option<Conclusion> = None;
    let mut predicate_line: Option<usize> = None;
    for (k, raw) in text.lines().enumerate() {
        let number = k + 1;
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let trimmed = line.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let kw_start = line.len() - trimmed.len();
        let kw_end = kw_start + trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let keyword = &line[kw_start..kw_end];
        let at = |byte: usize, msg: String| Error::parse(number, char_col(line, byte), msg);
        match keyword {
            "vars" => {
                if ring.is_some() {
                    return Err(at(kw_start, "duplicate `vars` line".into()));
                }
                let names: Vec<&str> = line[kw_end..]
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .collect();
                let r = Ring::new(names, MonomialOrder::GrevLex).map_err(|e| at(kw_end, e.to_string()))?;
                ring = Some(r);
            }
            "mode" => {
                if mode.is_some() {
                    return Err(at(kw_start, "duplicate `mode` line".into()));
                }
                let m = line[kw_end..].trim();
                let m = Mode::from_tag(m).ok_or_else(|| at(kw_end, format!("mode must be R or Z, got `{m}`")))?;
                mode = Some((m, number));
            }
            "hyp" | "concl" => {
                let Some(r) = &ring else {
                    return Err(at(kw_start, "`vars` must come before hypotheses".into()));
                };
                let ctx = LineCtx { line, number, ring: r };
                let st = ctx.statement(kw_end, line.len())?;
                if matches!(st, Statement::Predicate(_)) && predicate_line.is_none() {
                    predicate_line = Some(number);
                }
                if keyword == "hyp" {
                    hypotheses.push(match st {
                        Statement::Equation(e) => Hypothesis::Equation(e),
                        Statement::Predicate(p) => Hypothesis::Predicate(p),
                    });
                } else {
                    if conclusion.is_some() {
                        return Err(at(kw_start, "duplicate `concl` line".into()));
                    }
                    conclusion = Some(match st {
                        Statement::Equation(e) => Conclusion::Equation(e),
                        Statement::Predicate(p) => Conclusion::Predicate(p),
                    });
                }
            }
            other => return Err(at(kw_start, format!("unknown keyword `{other}`"))),
        }
    }
    let Some(ring) = ring else {
        return Err(Error::parse(1, 1, "missing `vars` line"));
    };
    // predicates live over the integers
    let mode = match (mode, predicate_line) {
        (Some((Mode::Real, line)), Some(_)) => {
            return Err(Error::parse(line, 1, "predicates need mode Z"));
        }
        (Some((m, _)), _) => m,
        (None, Some(_)) => Mode::Integer,
        (None, None) => Mode::Real,
    };
    Ok(Goal {
        mode,
        ring,
        hypotheses,
        conclusion,
    })
}
