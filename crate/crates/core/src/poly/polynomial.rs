use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::ring::{same_ring, RingRef};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A nonzero coefficient attached to a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Monomial,
}

/// Multivariate polynomial over the rationals.
///
/// Terms are strictly descending under the ring's order with no zero
/// coefficients, so the leading term is always `terms[0]`.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

#[allow(clippy::len_without_is_empty)]
impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &RingRef, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                coeff: c,
                mono: Monomial::one(ring.nvars()),
            }],
        }
    }

    pub fn from_int(ring: &RingRef, c: i64) -> Self {
        Self::constant(ring, Rational::from_integer(c.into()))
    }

    pub fn var(ring: &RingRef, index: usize) -> Self {
        Self::monomial(ring, Rational::one(), Monomial::var(ring.nvars(), index, 1))
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &RingRef, coeff: Rational, mono: Monomial) -> Self {
        assert_eq!(mono.len(), ring.nvars(), "monomial length does not match ring");
        if coeff.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term { coeff, mono }],
        }
    }

    /// Canonicalizes an arbitrary list of terms: sorts, merges equal
    /// monomials and drops zeros.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut v: Vec<Term> = terms
            .into_iter()
            .map(|(coeff, mono)| {
                assert_eq!(mono.len(), ring.nvars(), "monomial length does not match ring");
                Term { coeff, mono }
            })
            .collect();
        let ord = ring.order();
        v.sort_by(|a, b| ord.cmp(&b.mono, &a.mono));
        Polynomial {
            ring: ring.clone(),
            terms: combine_sorted(v),
        }
    }

    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one() && self.terms[0].coeff.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.mono.exponent(var)).max().unwrap_or(0)
    }

    /// Coefficient of `var^j` for `j = 0..=deg`, each with `var` removed.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); deg + 1];
        for t in &self.terms {
            let j = t.mono.exponent(var) as usize;
            let mut e = t.mono.exponents().to_vec();
            e[var] = 0;
            buckets[j].push(Term {
                coeff: t.coeff.clone(),
                mono: Monomial::from_exponents(e),
            });
        }
        // removing a single variable's exponent keeps the relative order
        // within a bucket only for some orders, so re-canonicalize
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(&self.ring, b.into_iter().map(|t| (t.coeff, t.mono))))
            .collect()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge(&self.ring, &self.terms, &other.terms, false),
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge(&self.ring, &self.terms, &other.terms, true),
        })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        for i in 0..self.ring.nvars() {
            let a = self.degree_in(i) as u64;
            let b = other.degree_in(i) as u64;
            if a + b > u32::MAX as u64 {
                return Err(Error::ExponentOverflow);
            }
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            return Ok(other.mul_term(&t.coeff, &t.mono));
        }
        if other.terms.len() == 1 {
            let t = &other.terms[0];
            return Ok(self.mul_term(&t.coeff, &t.mono));
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                prods.push(Term {
                    coeff: &a.coeff * &b.coeff,
                    mono: a.mono.mul(&b.mono),
                });
            }
        }
        let ord = self.ring.order();
        prods.sort_by(|a, b| ord.cmp(&b.mono, &a.mono));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: combine_sorted(prods),
        })
    }

    /// `self^n`, with `self^0 = 1`.
    pub fn pow(&self, n: u32) -> Result<Polynomial> {
        if n == 0 {
            return Ok(Polynomial::one(&self.ring));
        }
        for i in 0..self.ring.nvars() {
            if (self.degree_in(i) as u64) * (n as u64) > u32::MAX as u64 {
                return Err(Error::ExponentOverflow);
            }
        }
        if self.terms.len() == 1 {
            let t = &self.terms[0];
            let c = num_traits::pow::Pow::pow(&t.coeff, n);
            return Ok(Polynomial::monomial(&self.ring, c, t.mono.checked_pow(n)?));
        }
        // square-and-multiply
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Multiplication by `c * mono`; the term order is preserved because
    /// monomial orders are multiplicative.
    pub fn mul_term(&self, c: &Rational, mono: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.mul(mono),
                })
                .collect(),
        }
    }

    /// Leading coefficient 1, together with the factor the input was
    /// divided by.
    pub fn monic(&self) -> (Polynomial, Rational) {
        match self.leading_coeff() {
            None => (self.clone(), Rational::one()),
            Some(lc) if lc.is_one() => (self.clone(), Rational::one()),
            Some(lc) => {
                let lc = lc.clone();
                (self.scale(&lc.recip()), lc)
            }
        }
    }

    /// Re-expresses the polynomial in another ring, matching variables by
    /// name. Fails if a variable with a nonzero exponent is missing.
    pub fn in_ring(&self, ring: &RingRef) -> Result<Polynomial> {
        if same_ring(&self.ring, ring) {
            return Ok(Polynomial {
                ring: ring.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self.ring.vars().iter().map(|v| ring.index_of(v)).collect();
        let mut out = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut e = vec![0u32; ring.nvars()];
            for (i, &x) in t.mono.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = x,
                    None => return Err(Error::UnknownVariable(self.ring.vars()[i].clone())),
                }
            }
            out.push((t.coeff.clone(), Monomial::from_exponents(e)));
        }
        Ok(Polynomial::from_terms(ring, out))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_integer())
    }

    /// Least common multiple of all coefficient denominators (1 for zero).
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()))
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_one())
    }

    /// Substitutes a polynomial for one variable.
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Result<Polynomial> {
        self.check_ring(value)?;
        let coeffs = self.coefficients_in(var);
        // Horner
        let mut acc = Polynomial::zero(&self.ring);
        for c in coeffs.iter().rev() {
            acc = acc.checked_mul(value)?.checked_add(c)?;
        }
        Ok(acc)
    }
}

fn merge(ring: &RingRef, a: &[Term], b: &[Term], negate_b: bool) -> Vec<Term> {
    let ord = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let lift = |t: &Term| {
        if negate_b {
            Term {
                coeff: -t.coeff.clone(),
                mono: t.mono.clone(),
            }
        } else {
            t.clone()
        }
    };
    while i < a.len() && j < b.len() {
        match ord.cmp(&a[i].mono, &b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(lift(&b[j]));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].coeff - &b[j].coeff
                } else {
                    &a[i].coeff + &b[j].coeff
                };
                if !c.is_zero() {
                    out.push(Term {
                        coeff: c,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(lift));
    out
}

fn combine_sorted(v: Vec<Term>) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::with_capacity(v.len());
    for t in v {
        match out.last_mut() {
            Some(last) if last.mono == t.mono => last.coeff += t.coeff,
            _ => {
                if matches!(out.last(), Some(l) if l.coeff.is_zero()) {
                    out.pop();
                }
                out.push(t);
            }
        }
    }
    if matches!(out.last(), Some(l) if l.coeff.is_zero()) {
        out.pop();
    }
    out
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: -t.coeff.clone(),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live in different rings; use the
            /// `checked_*` variant to get an error instead.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect(concat!("polynomial ", stringify!($method)))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

/// `Σ a_i * b_i`, zero for empty input.
pub fn dot(ring: &RingRef, a: &[Polynomial], b: &[Polynomial]) -> Result<Polynomial> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut acc = Polynomial::zero(ring);
    for (x, y) in a.iter().zip(b) {
        acc = acc.checked_add(&x.checked_mul(y)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, MonomialOrder, Ring};

    fn ring() -> RingRef {
        Ring::new(["x", "y"], MonomialOrder::GrevLex).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &ring()).unwrap()
    }

    #[test]
    fn addition() {
        assert_eq!(p("x+y") + p("0"), p("x+y"));
        assert_eq!(p("x^2+x*y") + p("y^2+x*y"), p("x^2 + 2*x*y + y^2"));
        let q = p("3*x^2 - 1/2*y");
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn multiplication_and_powers() {
        assert_eq!(p("x+y") * p("x+y"), p("x^2+2*x*y+y^2"));
        assert_eq!(p("x^3 - y") * p("1"), p("x^3 - y"));
        assert_eq!(p("x-1") * p("x+1"), p("x^2-1"));
        assert_eq!(p("x+y").pow(2).unwrap(), p("x^2+2*x*y+y^2"));
        assert_eq!(p("x+y").pow(0).unwrap(), p("1"));
        assert_eq!(p("x+y").pow(1).unwrap(), p("x+y"));
        assert_eq!(p("x^2").pow(u32::MAX), Err(Error::ExponentOverflow));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let other = Ring::new(["x", "z"], MonomialOrder::GrevLex).unwrap();
        let q = parse_polynomial("x+z", &other).unwrap();
        assert_eq!(p("x").checked_add(&q), Err(Error::RingMismatch));
        assert_eq!(p("x").checked_mul(&q), Err(Error::RingMismatch));
    }

    #[test]
    fn ring_change_and_coefficients() {
        let ext = Ring::new(["x", "y", "z"], MonomialOrder::Lex).unwrap();
        let q = p("x^2*y + y").in_ring(&ext).unwrap();
        assert_eq!(q.ring().nvars(), 3);
        assert_eq!(q.in_ring(&ring()).unwrap(), p("x^2*y + y"));
        let z = parse_polynomial("z*x + 1", &ext).unwrap();
        assert_eq!(z.in_ring(&ring()), Err(Error::UnknownVariable("z".into())));
        let c = p("x^2*y + 3*x + y^2").coefficients_in(0);
        assert_eq!(c, vec![p("y^2"), p("3"), p("y")]);
        assert_eq!(p("x^2 + y").substitute(0, &p("y + 1")).unwrap(), p("y^2 + 3*y + 1"));
    }

    #[test]
    fn rational_arithmetic_is_exact() {
        let (a, b, c, d) = (3i64, 7i64, -5i64, 11i64);
        let lhs = p(&format!("{a}/{b}")) + p(&format!("{c}/{d}"));
        let rhs = p(&format!("{}/{}", a * d + c * b, b * d));
        assert!((lhs - rhs).is_zero());
        assert_eq!(p("1/2*x + 1/3").denominator_lcm(), BigInt::from(6));
    }
}
