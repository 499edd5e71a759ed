use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{dot, Monomial, Polynomial, Rational};

/// A polynomial together with its cofactors over a fixed generator list:
/// `value = Σ trace[j] * generators[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracedPolynomial {
    pub value: Polynomial,
    pub trace: Vec<Polynomial>,
}

impl TracedPolynomial {
    /// The `index`-th generator itself, traced as a unit vector.
    pub fn generator(generators: &[Polynomial], index: usize) -> Self {
        let ring = generators[index].ring();
        let trace = (0..generators.len())
            .map(|j| {
                if j == index {
                    Polynomial::one(ring)
                } else {
                    Polynomial::zero(ring)
                }
            })
            .collect();
        TracedPolynomial {
            value: generators[index].clone(),
            trace,
        }
    }

    /// Expands `Σ trace[j] * generators[j]` and compares it with `value`.
    pub fn verify(&self, generators: &[Polynomial]) -> Result<bool> {
        let sum = dot(self.value.ring(), &self.trace, generators)?;
        Ok(sum == self.value)
    }

    fn combine(&self, a: (&Rational, &Monomial), other: &Self, b: (&Rational, &Monomial)) -> Self {
        let value = self.value.mul_term(a.0, a.1) - other.value.mul_term(b.0, b.1);
        let trace = self
            .trace
            .iter()
            .zip(&other.trace)
            .map(|(x, y)| x.mul_term(a.0, a.1) - y.mul_term(b.0, b.1))
            .collect();
        TracedPolynomial { value, trace }
    }
}

/// `S(f, g) = (lcm / lt(f)) * f - (lcm / lt(g)) * g`, where `lcm` is the
/// least common multiple of the leading monomials. Traces follow linearly.
pub fn s_polynomial(f: &TracedPolynomial, g: &TracedPolynomial) -> Result<TracedPolynomial> {
    let (Some(tf), Some(tg)) = (f.value.leading_term(), g.value.leading_term()) else {
        return Err(Error::ZeroPolynomial);
    };
    if f.trace.len() != g.trace.len() {
        return Err(Error::LengthMismatch {
            left: f.trace.len(),
            right: g.trace.len(),
        });
    }
    let lcm = tf.mono.lcm(&tg.mono);
    let mf = lcm.div(&tf.mono).expect("lcm divisible");
    let mg = lcm.div(&tg.mono).expect("lcm divisible");
    let cf = Rational::one() / &tf.coeff;
    let cg = Rational::one() / &tg.coeff;
    Ok(f.combine((&cf, &mf), g, (&cg, &mg)))
}
