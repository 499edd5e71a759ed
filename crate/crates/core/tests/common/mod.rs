#![allow(dead_code)]

use std::path::PathBuf;

use gbproof::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring, RingRef};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

pub fn goal_path(name: &str) -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../goals")).join(format!("{name}.goal"))
}

pub fn goal_text(name: &str) -> String {
    std::fs::read_to_string(goal_path(name)).unwrap()
}

pub fn ring(vars: &[&str], order: MonomialOrder) -> RingRef {
    Ring::new(vars.iter().copied(), order).unwrap()
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Random polynomial with up to `terms` terms of total degree at most
/// `deg` and integer coefficients in `-coef..=coef`.
pub fn random_poly(rng: &mut impl Rng, ring: &RingRef, terms: usize, deg: u32, coef: i64) -> Polynomial {
    let n = ring.nvars();
    let count = rng.gen_range(1..=terms);
    Polynomial::from_terms(
        ring,
        (0..count).map(|_| {
            let mut budget = rng.gen_range(0..=deg);
            let mut e = vec![0u32; n];
            for slot in e.iter_mut() {
                let k = rng.gen_range(0..=budget);
                *slot = k;
                budget -= k;
            }
            let c = loop {
                let c = rng.gen_range(-coef..=coef);
                if c != 0 {
                    break c;
                }
            };
            (int(c), Monomial::from_exponents(e))
        }),
    )
}

/// Evaluates `p` at `point` term by term.
pub fn eval(p: &Polynomial, point: &[Rational]) -> Rational {
    let mut sum = Rational::zero();
    for t in p.terms() {
        let mut v = t.coeff.clone();
        for (x, &e) in point.iter().zip(t.mono.exponents()) {
            for _ in 0..e {
                v *= x;
            }
        }
        sum += v;
    }
    sum
}

pub fn one() -> Rational {
    Rational::one()
}
