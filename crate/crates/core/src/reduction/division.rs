use std::cmp::Reverse;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, Polynomial, Rational, Term};

/// Outcome of dividing one polynomial by a list of divisors.
///
/// `dividend = Σ quotients[j] * divisors[j] + remainder`, and no monomial of
/// `remainder` is divisible by a divisor's leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub remainder: Polynomial,
    pub quotients: Vec<Polynomial>,
}

/// Multivariate division. At every step the current leading term is
/// divided by the first divisor (in list order) whose leading monomial
/// divides it; otherwise it moves to the remainder.
pub fn reduce(dividend: &Polynomial, divisors: &[Polynomial]) -> Result<ReductionResult> {
    for d in divisors {
        if d.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !same_ring(d.ring(), dividend.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let refs: Vec<&Polynomial> = divisors.iter().collect();
    let (remainder, quotients) = divide(dividend, &refs);
    let ring = dividend.ring();
    Ok(ReductionResult {
        remainder,
        quotients: quotients
            .into_iter()
            .map(|q| Polynomial::from_sorted(ring, q))
            .collect(),
    })
}

/// Division core. Quotient term lists come out sorted descending because
/// successive leading terms strictly decrease.
pub(crate) fn divide(dividend: &Polynomial, divisors: &[&Polynomial]) -> (Polynomial, Vec<Vec<Term>>) {
    let ring = dividend.ring();
    let ord = ring.order();
    let heads: Vec<(&Monomial, &Rational)> = divisors
        .iter()
        .map(|d| {
            let t = d.leading_term().expect("nonzero divisor");
            (&t.mono, &t.coeff)
        })
        .collect();
    let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
    let mut remainder: Vec<Term> = Vec::new();
    // pending terms keyed so that the largest monomial comes first
    let mut work: BTreeMap<Reverse<Vec<i64>>, Term> = dividend
        .terms()
        .iter()
        .map(|t| (Reverse(ord.sort_key(&t.mono)), t.clone()))
        .collect();
    while let Some((_, lead)) = work.pop_first() {
        let Some(j) = heads.iter().position(|(lm, _)| lm.divides(&lead.mono)) else {
            remainder.push(lead);
            continue;
        };
        let (lm, lc) = heads[j];
        let mono = lead.mono.div(lm).expect("divides");
        let c = if lc.is_one() { lead.coeff } else { lead.coeff / lc };
        for t in &divisors[j].terms()[1..] {
            let m = t.mono.mul(&mono);
            let delta = &c * &t.coeff;
            match work.entry(Reverse(ord.sort_key(&m))) {
                Entry::Vacant(v) => {
                    v.insert(Term { coeff: -delta, mono: m });
                }
                Entry::Occupied(mut o) => {
                    o.get_mut().coeff -= delta;
                    if o.get().coeff.is_zero() {
                        o.remove();
                    }
                }
            }
        }
        quotients[j].push(Term { coeff: c, mono });
    }
    (Polynomial::from_sorted(ring, remainder), quotients)
}

/// True if some term of `p` is divisible by `lm`.
pub(crate) fn has_term_divisible_by(p: &Polynomial, lm: &Monomial) -> bool {
    p.terms().iter().any(|t| lm.divides(&t.mono))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, MonomialOrder, Ring, RingRef};

    fn lex() -> RingRef {
        Ring::new(["x", "y"], MonomialOrder::Lex).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &lex()).unwrap()
    }

    fn gens() -> Vec<Polynomial> {
        vec![p("x^2+x*y"), p("y^2+x*y")]
    }

    #[test]
    fn dividend_is_a_generator() {
        let r = reduce(&p("x^2+x*y"), &gens()).unwrap();
        assert!(r.remainder.is_zero());
        assert_eq!(r.quotients, vec![p("1"), p("0")]);
    }

    #[test]
    fn degree_too_low() {
        let r = reduce(&p("x+y"), &gens()).unwrap();
        assert_eq!(r.remainder, p("x+y"));
        assert!(r.quotients.iter().all(Polynomial::is_zero));
    }

    #[test]
    fn worked_example_square() {
        let r = reduce(&p("x^2+2*x*y+y^2"), &gens()).unwrap();
        assert!(r.remainder.is_zero());
        assert_eq!(r.quotients, vec![p("1"), p("1")]);
    }

    #[test]
    fn zero_divisor_rejected() {
        assert_eq!(reduce(&p("x"), &[p("0")]), Err(Error::ZeroPolynomial));
    }
}
