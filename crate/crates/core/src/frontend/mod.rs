//! User-level goals: polynomial equations and inequations over the reals or
//! integers, and divisibility-style predicates over the integers.

mod arith;
mod goalfile;
mod render;

pub use arith::{arith_reduce, prove_arith_goal, verify_witnesses, ArithPredicate, MembershipObligation, PredicateKind};
pub use goalfile::{parse_goal, Conclusion, Goal, Hypothesis};

use num_bigint::BigInt;
use num_traits::One;

use crate::certificate::{CertificateFile, Mode};
use crate::error::{Error, Result};
use crate::nullstellensatz::{integer_scale, method2_with, Method, NotFound, Outcome, RadicalCertificate};
use crate::poly::{normalize_expression_text, print_polynomial, MonomialOrder, Polynomial, RingRef};
use render::{paren_sum, render_identity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    Equal,
    NotEqual,
}

/// `lhs = rhs` or `lhs <> rhs`, with the source text kept for rendering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub polarity: Polarity,
    residual: Polynomial,
    lhs_src: String,
    rhs_src: String,
}

impl Equation {
    pub fn new(lhs: Polynomial, rhs: Polynomial, polarity: Polarity) -> Result<Equation> {
        let (l, r) = (print_polynomial(&lhs), print_polynomial(&rhs));
        Equation::with_sources(lhs, rhs, polarity, &l, &r)
    }

    /// Like [`Equation::new`], rendering the sides with the given text.
    pub fn with_sources(
        lhs: Polynomial,
        rhs: Polynomial,
        polarity: Polarity,
        lhs_src: &str,
        rhs_src: &str,
    ) -> Result<Equation> {
        let residual = lhs.checked_sub(&rhs)?;
        Ok(Equation {
            lhs,
            rhs,
            polarity,
            residual,
            lhs_src: normalize_expression_text(lhs_src)?,
            rhs_src: normalize_expression_text(rhs_src)?,
        })
    }

    /// `lhs - rhs`.
    pub fn residual(&self) -> &Polynomial {
        &self.residual
    }

    /// Source text of `lhs - rhs`.
    pub fn residual_source(&self) -> String {
        if self.rhs_src == "0" {
            self.lhs_src.clone()
        } else if self.lhs_src == "0" {
            format!("-{}", paren_sum(&self.rhs_src))
        } else {
            format!("{} - {}", self.lhs_src, paren_sum(&self.rhs_src))
        }
    }

    fn lift(&self, ring: &RingRef) -> Result<Equation> {
        Ok(Equation {
            lhs: self.lhs.in_ring(ring)?,
            rhs: self.rhs.in_ring(ring)?,
            polarity: self.polarity,
            residual: self.residual.in_ring(ring)?,
            lhs_src: self.lhs_src.clone(),
            rhs_src: self.rhs_src.clone(),
        })
    }

    fn from_residual(p: Polynomial, src: String) -> Equation {
        let zero = Polynomial::zero(p.ring());
        Equation {
            lhs: p.clone(),
            rhs: zero,
            polarity: Polarity::Equal,
            residual: p,
            lhs_src: src,
            rhs_src: "0".into(),
        }
    }
}

/// Hypotheses imply the conclusion, for all values of the ring variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemStatement {
    pub mode: Mode,
    pub ring: RingRef,
    pub hypotheses: Vec<Equation>,
    pub conclusion: Equation,
}

impl ProblemStatement {
    pub fn variables(&self) -> &[String] {
        self.ring.vars()
    }
}

/// Replaces `p <> q` in the conclusion by the hypothesis `p - q = 0` and
/// the conclusion `1 = 0`.
pub fn transform_conclusion_negation(s: &ProblemStatement) -> Result<ProblemStatement> {
    if s.conclusion.polarity != Polarity::NotEqual {
        return Err(Error::InvalidArgument("conclusion is not an inequation".into()));
    }
    let c = &s.conclusion;
    let mut hypotheses = s.hypotheses.clone();
    hypotheses.push(Equation::from_residual(c.residual.clone(), c.residual_source()));
    let one = Polynomial::one(&s.ring);
    Ok(ProblemStatement {
        mode: s.mode,
        ring: s.ring.clone(),
        hypotheses,
        conclusion: Equation::with_sources(one, Polynomial::zero(&s.ring), Polarity::Equal, "1", "0")?,
    })
}

/// Replaces every hypothesis `p <> 0` by `t_k * p - 1 = 0` with a fresh
/// variable `t_k`. Only sound over a field.
pub fn transform_hypothesis_negations(s: &ProblemStatement) -> Result<ProblemStatement> {
    let negated: Vec<usize> = (0..s.hypotheses.len())
        .filter(|&i| s.hypotheses[i].polarity == Polarity::NotEqual)
        .collect();
    if negated.is_empty() {
        return Ok(s.clone());
    }
    if s.mode == Mode::Integer {
        return Err(Error::UnsupportedGoal(
            "inequations among the hypotheses need mode R".into(),
        ));
    }
    let mut names: Vec<String> = Vec::new();
    for _ in &negated {
        let n = s.ring.fresh_name("t", &names);
        names.push(n);
    }
    let ring = s.ring.extended(names.clone(), s.ring.order().clone())?;
    let base = s.ring.nvars();
    let mut hypotheses = Vec::with_capacity(s.hypotheses.len());
    let mut k = 0;
    for h in &s.hypotheses {
        let h = h.lift(&ring)?;
        if h.polarity == Polarity::Equal {
            hypotheses.push(h);
            continue;
        }
        let t = Polynomial::var(&ring, base + k);
        let p = t.checked_mul(&h.residual)? - Polynomial::one(&ring);
        let src = format!("{}*{} - 1", names[k], paren_sum(&h.residual_source()));
        hypotheses.push(Equation::from_residual(p, normalize_expression_text(&src)?));
        k += 1;
    }
    Ok(ProblemStatement {
        mode: s.mode,
        ring: ring.clone(),
        hypotheses,
        conclusion: s.conclusion.lift(&ring)?,
    })
}

/// Applies both negation transforms where needed.
pub fn normalize_statement(s: &ProblemStatement) -> Result<ProblemStatement> {
    let s = if s.conclusion.polarity == Polarity::NotEqual {
        transform_conclusion_negation(s)?
    } else {
        s.clone()
    };
    transform_hypothesis_negations(&s)
}

/// One proved identity `scale * target^power = Σ cofactors[i] * generators[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvedIdentity {
    pub mode: Mode,
    pub target: Polynomial,
    pub generators: Vec<Polynomial>,
    pub certificate: RadicalCertificate,
    /// Existential witnesses read off this identity.
    pub witnesses: Vec<(String, Polynomial)>,
    pub rendered: String,
    /// Leading generators that come from hypotheses; the rest belong to the
    /// conclusion's defining identity.
    pub hypothesis_count: usize,
}

impl ProvedIdentity {
    pub fn to_certificate(&self) -> Result<CertificateFile> {
        let c = &self.certificate;
        let mut file = CertificateFile::new(self.mode, &self.target, c.power, c.scale.clone(), &self.generators, &c.cofactors)?;
        let ring = file.ring().clone();
        file.witnesses = self
            .witnesses
            .iter()
            .map(|(n, w)| Ok((n.clone(), w.in_ring(&ring)?)))
            .collect::<Result<_>>()?;
        file.note = Some(self.rendered.clone());
        Ok(file)
    }
}

/// A goal together with everything needed to replay its proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProvedGoal {
    pub identities: Vec<ProvedIdentity>,
}

impl ProvedGoal {
    pub fn certificates(&self) -> Result<Vec<CertificateFile>> {
        self.identities.iter().map(ProvedIdentity::to_certificate).collect()
    }

    pub fn witnesses(&self) -> Vec<(String, Polynomial)> {
        self.identities.iter().flat_map(|i| i.witnesses.iter().cloned()).collect()
    }

    /// One rendered identity per line.
    pub fn rendered_identity(&self) -> String {
        self.identities
            .iter()
            .map(|i| i.rendered.as_str())
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Search settings shared by every goal kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProveOptions {
    pub max_power: u32,
    pub method: Method,
    pub order: MonomialOrder,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions {
            max_power: crate::reduction::DEFAULT_MAX_POWER,
            method: Method::Auto,
            order: MonomialOrder::GrevLex,
        }
    }
}

/// Proves a statement whose hypotheses and conclusion are all equations.
pub fn prove_equality_goal(s: &ProblemStatement, max_power: u32) -> Result<Outcome<ProvedGoal>> {
    prove_equality_goal_with(s, max_power, Method::Auto)
}

pub fn prove_equality_goal_with(s: &ProblemStatement, max_power: u32, method: Method) -> Result<Outcome<ProvedGoal>> {
    if s.conclusion.polarity != Polarity::Equal || s.hypotheses.iter().any(|h| h.polarity != Polarity::Equal) {
        return Err(Error::InvalidArgument(
            "inequations must be transformed away before proving".into(),
        ));
    }
    let ring = &s.ring;
    let target = s.conclusion.residual.clone();
    let generators: Vec<Polynomial> = s.hypotheses.iter().map(|h| h.residual.clone()).collect();
    if s.mode == Mode::Integer {
        if let Some(e) = std::iter::once(&s.conclusion)
            .chain(&s.hypotheses)
            .find(|e| !e.residual.is_integral())
        {
            return Err(Error::NonIntegral(e.residual_source()));
        }
    }
    let cert = if target.is_zero() {
        RadicalCertificate {
            power: 1,
            scale: BigInt::one(),
            cofactors: vec![Polynomial::zero(ring); generators.len()],
        }
    } else if generators.is_empty() {
        return Ok(Outcome::NotFound(NotFound::NotInRadical));
    } else {
        match method2_with(&target, &generators, max_power, method)? {
            Outcome::Found(c) => c,
            Outcome::NotFound(why) => return Ok(Outcome::NotFound(why)),
        }
    };
    let cert = if s.mode == Mode::Integer {
        integer_scale(&cert, &target, &generators)?
    } else {
        cert
    };
    if !cert.holds(&target, &generators)? {
        return Err(Error::Internal("certificate does not expand".into()));
    }
    let gen_srcs: Vec<String> = s.hypotheses.iter().map(Equation::residual_source).collect();
    let rendered = render_identity(&cert, &s.conclusion.residual_source(), &gen_srcs);
    Ok(Outcome::Found(ProvedGoal {
        identities: vec![ProvedIdentity {
            mode: s.mode,
            target,
            hypothesis_count: generators.len(),
            generators,
            certificate: cert,
            witnesses: Vec::new(),
            rendered,
        }],
    }))
}

/// Proves any parsed goal.
pub fn prove_goal(goal: &Goal, opts: &ProveOptions) -> Result<Outcome<ProvedGoal>> {
    let goal = goal.with_order(&opts.order)?;
    match &goal.conclusion {
        None => Err(Error::InvalidArgument("the goal has no conclusion".into())),
        Some(Conclusion::Predicate(c)) => {
            if goal
                .hypotheses
                .iter()
                .any(|h| matches!(h, Hypothesis::Equation(e) if e.polarity == Polarity::NotEqual))
            {
                return Err(Error::UnsupportedGoal(
                    "inequations cannot be combined with predicate conclusions".into(),
                ));
            }
            arith::prove_unfolded(goal.unfold_hypotheses()?, c, opts.max_power)
        }
        Some(Conclusion::Equation(_)) => {
            let s = goal.to_statement()?;
            let s = normalize_statement(&s)?;
            prove_equality_goal_with(&s, opts.max_power, opts.method)
        }
    }
}

#[cfg(test)]
mod tests;
