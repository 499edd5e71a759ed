//! Divisibility-style predicates over the integers, unfolded into
//! polynomial equations with existential witnesses.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::render::{paren_sum, render_identity};
use super::{Equation, ProvedGoal, ProvedIdentity};
use crate::certificate::Mode;
use crate::error::{Error, Result};
use crate::nullstellensatz::{integer_scale, method2_with, Method, NotFound, Outcome, RadicalCertificate};
use crate::poly::{normalize_expression_text, print_polynomial, Polynomial, Rational, RingRef};
use crate::reduction::buchberger_untraced;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PredicateKind {
    /// `divides(a, b)`: `exists c, b = c*a`.
    Divides,
    /// `modulo(a, b, p)`: `exists k, a - b = k*p`.
    Modulo,
    /// `ideal(x, a, b)`: `exists u v, x = u*a + v*b`.
    Ideal,
    /// `gcd(g, a, b)`: `divides(g, a)`, `divides(g, b)` and `ideal(g, a, b)`.
    Gcd,
    /// `coprime(a, b)`: `exists u v, 1 = u*a + v*b`.
    Coprime,
}

impl PredicateKind {
    pub fn name(self) -> &'static str {
        match self {
            PredicateKind::Divides => "divides",
            PredicateKind::Modulo => "modulo",
            PredicateKind::Ideal => "ideal",
            PredicateKind::Gcd => "gcd",
            PredicateKind::Coprime => "coprime",
        }
    }

    pub fn from_name(s: &str) -> Option<PredicateKind> {
        [
            PredicateKind::Divides,
            PredicateKind::Modulo,
            PredicateKind::Ideal,
            PredicateKind::Gcd,
            PredicateKind::Coprime,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            PredicateKind::Divides | PredicateKind::Coprime => 2,
            _ => 3,
        }
    }
}

/// Left-hand side of a defining identity.
#[derive(Clone, Copy, Debug)]
enum Lhs {
    Arg(usize),
    /// `args[0] - args[1]`
    Difference,
    One,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithPredicate {
    pub kind: PredicateKind,
    pub args: Vec<Polynomial>,
    sources: Vec<String>,
}

impl ArithPredicate {
    pub fn new(kind: PredicateKind, args: Vec<Polynomial>) -> Result<ArithPredicate> {
        let sources: Vec<String> = args.iter().map(print_polynomial).collect();
        ArithPredicate::with_sources(kind, args, sources)
    }

    pub fn with_sources(kind: PredicateKind, args: Vec<Polynomial>, sources: Vec<String>) -> Result<ArithPredicate> {
        if args.len() != kind.arity() || sources.len() != args.len() {
            return Err(Error::InvalidArgument(format!(
                "{} takes {} arguments, got {}",
                kind.name(),
                kind.arity(),
                args.len()
            )));
        }
        if let Some(ring) = args.first().map(Polynomial::ring) {
            if args.iter().any(|a| !crate::poly::same_ring(a.ring(), ring)) {
                return Err(Error::RingMismatch);
            }
        }
        if let Some(a) = args.iter().find(|a| !a.is_integral()) {
            return Err(Error::NonIntegral(print_polynomial(a)));
        }
        let sources = sources
            .iter()
            .map(|s| normalize_expression_text(s))
            .collect::<Result<_>>()?;
        Ok(ArithPredicate { kind, args, sources })
    }

    pub fn ring(&self) -> &RingRef {
        self.args[0].ring()
    }

    pub(crate) fn lift(&self, ring: &RingRef) -> Result<ArithPredicate> {
        Ok(ArithPredicate {
            kind: self.kind,
            args: self.args.iter().map(|a| a.in_ring(ring)).collect::<Result<_>>()?,
            sources: self.sources.clone(),
        })
    }

    /// `name(arg, ...)` in source syntax.
    pub fn display(&self) -> String {
        format!("{}({})", self.kind.name(), self.sources.join(", "))
    }

    /// `(target, [(witness base name, multiplier)])` for each defining
    /// identity `target = Σ witness * args[multiplier]`.
    fn identities(&self) -> Vec<(Lhs, Vec<(&'static str, usize)>)> {
        match self.kind {
            PredicateKind::Divides => vec![(Lhs::Arg(1), vec![("c", 0)])],
            PredicateKind::Modulo => vec![(Lhs::Difference, vec![("k", 2)])],
            PredicateKind::Ideal => vec![(Lhs::Arg(0), vec![("u", 1), ("v", 2)])],
            PredicateKind::Coprime => vec![(Lhs::One, vec![("u", 0), ("v", 1)])],
            PredicateKind::Gcd => vec![
                (Lhs::Arg(1), vec![("c", 0)]),
                (Lhs::Arg(2), vec![("c", 0)]),
                (Lhs::Arg(0), vec![("u", 1), ("v", 2)]),
            ],
        }
    }

    fn target(&self, lhs: Lhs, ring: &RingRef) -> Result<(Polynomial, String)> {
        Ok(match lhs {
            Lhs::Difference => (
                self.args[0].in_ring(ring)?.checked_sub(&self.args[1].in_ring(ring)?)?,
                format!("{} - {}", self.sources[0], paren_sum(&self.sources[1])),
            ),
            Lhs::One => (Polynomial::one(ring), "1".into()),
            Lhs::Arg(i) => (self.args[i].in_ring(ring)?, self.sources[i].clone()),
        })
    }
}

/// Prove `target ∈ (hypotheses, extra generators)`; the cofactors of the
/// extra generators are the witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipObligation {
    pub label: String,
    pub target: Polynomial,
    pub target_src: String,
    /// `(witness name, generator, generator source)`.
    pub extra: Vec<(String, Polynomial, String)>,
}

/// Hypotheses after unfolding, in a ring extended by their witnesses.
pub(crate) struct Unfolded {
    pub ring: RingRef,
    pub equations: Vec<Equation>,
    pub taken: Vec<String>,
}

/// Unfolds predicate hypotheses; each witness becomes a fresh variable
/// appended to `ring` in hypothesis order.
pub(crate) fn unfold(
    ring: &RingRef,
    equations: &[(usize, Equation)],
    preds: &[(usize, ArithPredicate)],
) -> Result<Unfolded> {
    let mut taken: Vec<String> = Vec::new();
    let mut plan = Vec::new();
    for (pos, p) in preds {
        for (lhs, terms) in p.identities() {
            let names: Vec<String> = terms
                .iter()
                .map(|(base, _)| {
                    let n = ring.fresh_name(base, &taken);
                    taken.push(n.clone());
                    n
                })
                .collect();
            plan.push((*pos, p, lhs, terms, names));
        }
    }
    let ext = ring.extended(taken.clone(), ring.order().clone())?;
    let mut out: Vec<(usize, Equation)> = Vec::new();
    for (pos, e) in equations {
        out.push((*pos, e.lift(&ext)?));
    }
    for (pos, p, lhs, terms, names) in plan {
        let (mut poly, mut src) = p.target(lhs, &ext)?;
        for ((_, arg), name) in terms.iter().zip(&names) {
            let w = Polynomial::var_named(&ext, name)?;
            poly = poly.checked_sub(&w.checked_mul(&p.args[*arg].in_ring(&ext)?)?)?;
            src = format!("{src} - {name}*{}", paren_sum(&p.sources[*arg]));
        }
        out.push((pos, Equation::from_residual(poly, normalize_expression_text(&src)?)));
    }
    // stable: keeps the file order of hypotheses
    out.sort_by_key(|(pos, _)| *pos);
    taken.extend(ext.vars().iter().cloned());
    Ok(Unfolded {
        ring: ext,
        equations: out.into_iter().map(|(_, e)| e).collect(),
        taken,
    })
}

fn obligations(concl: &ArithPredicate, ring: &RingRef, taken: &mut Vec<String>) -> Result<Vec<MembershipObligation>> {
    let mut out = Vec::new();
    for (lhs, terms) in concl.identities() {
        let (target, target_src) = concl.target(lhs, ring)?;
        let mut extra = Vec::new();
        for (base, arg) in terms {
            let name = ring.fresh_name(base, taken);
            taken.push(name.clone());
            extra.push((name, concl.args[arg].in_ring(ring)?, concl.sources[arg].clone()));
        }
        out.push(MembershipObligation {
            label: concl.display(),
            target,
            target_src,
            extra,
        });
    }
    Ok(out)
}

/// Hypothesis generators and the membership obligations of the conclusion.
pub fn arith_reduce(
    hypotheses: &[ArithPredicate],
    conclusion: &ArithPredicate,
) -> Result<(Vec<Polynomial>, Vec<MembershipObligation>)> {
    let ring = conclusion.ring().clone();
    let preds: Vec<(usize, ArithPredicate)> = hypotheses.iter().cloned().enumerate().collect();
    let mut u = unfold(&ring, &[], &preds)?;
    let obs = obligations(&conclusion.lift(&u.ring)?, &u.ring, &mut u.taken)?;
    Ok((u.equations.iter().map(|e| e.residual().clone()).collect(), obs))
}

/// Proves a predicate conclusion from predicate hypotheses.
pub fn prove_arith_goal(
    hypotheses: &[ArithPredicate],
    conclusion: &ArithPredicate,
    max_power: u32,
) -> Result<Outcome<ProvedGoal>> {
    let ring = conclusion.ring().clone();
    let preds: Vec<(usize, ArithPredicate)> = hypotheses.iter().cloned().enumerate().collect();
    let u = unfold(&ring, &[], &preds)?;
    prove_unfolded(u, conclusion, max_power)
}

pub(crate) fn prove_unfolded(mut u: Unfolded, conclusion: &ArithPredicate, max_power: u32) -> Result<Outcome<ProvedGoal>> {
    if max_power == 0 {
        return Err(Error::InvalidArgument("max_power must be at least 1".into()));
    }
    if let Some(e) = u.equations.iter().find(|e| !e.residual().is_integral()) {
        return Err(Error::NonIntegral(e.residual_source()));
    }
    let obs = obligations(&conclusion.lift(&u.ring)?, &u.ring, &mut u.taken)?;
    let hyp_gens: Vec<Polynomial> = u.equations.iter().map(|e| e.residual().clone()).collect();
    let hyp_srcs: Vec<String> = u.equations.iter().map(Equation::residual_source).collect();
    let mut identities = Vec::with_capacity(obs.len());
    for ob in obs {
        let mut gens = hyp_gens.clone();
        let mut srcs = hyp_srcs.clone();
        for (_, g, s) in &ob.extra {
            gens.push(g.clone());
            srcs.push(s.clone());
        }
        // a literal witness needs the first power: it is decided exactly by
        // reducing the target against the full basis
        let cert = if ob.target.is_zero() {
            RadicalCertificate {
                power: 1,
                scale: BigInt::one(),
                cofactors: vec![Polynomial::zero(&u.ring); gens.len()],
            }
        } else {
            match method2_with(&ob.target, &gens, 1, Method::FastPath)? {
                Outcome::Found(c) => c,
                Outcome::NotFound(_) => return Ok(Outcome::NotFound(NotFound::NotInIdeal)),
            }
        };
        let cert = integer_scale(&cert, &ob.target, &gens)?;
        if cert.power != 1 || cert.scale.abs() != BigInt::one() {
            return Ok(Outcome::NotFound(NotFound::WitnessExtractionFailed {
                power: cert.power,
                scale: cert.scale,
            }));
        }
        let sign = Rational::from_integer(cert.scale.clone());
        let h = hyp_gens.len();
        let witnesses = ob
            .extra
            .iter()
            .zip(&cert.cofactors[h..])
            .map(|((name, _, _), q)| (name.clone(), q.scale(&sign)))
            .collect();
        let rendered = render_identity(&cert, &ob.target_src, &srcs);
        identities.push(ProvedIdentity {
            mode: Mode::Integer,
            target: ob.target,
            generators: gens,
            certificate: cert,
            witnesses,
            rendered,
            hypothesis_count: h,
        });
    }
    Ok(Outcome::Found(ProvedGoal { identities }))
}

/// Substitutes every witness into its defining identity and reduces the
/// result by a Gröbner basis of the hypotheses.
pub fn verify_witnesses(goal: &ProvedGoal) -> Result<bool> {
    for id in &goal.identities {
        if id.witnesses.is_empty() {
            continue;
        }
        let (hyps, extra) = id.generators.split_at(id.hypothesis_count);
        if extra.len() != id.witnesses.len() {
            return Ok(false);
        }
        let mut residual = id.target.clone();
        for ((_, w), g) in id.witnesses.iter().zip(extra) {
            residual = residual.checked_sub(&w.checked_mul(g)?)?;
        }
        let zero = if hyps.iter().all(Polynomial::is_zero) {
            residual.is_zero()
        } else {
            buchberger_untraced(hyps)?.normal_form(&residual)?.is_zero()
        };
        if !zero {
            return Ok(false);
        }
    }
    Ok(true)
}
