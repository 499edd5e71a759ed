use super::division::ReductionResult;
use super::engine::{CompletionStats, Engine};
use super::traced::TracedPolynomial;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, RingRef};

/// A reduced, monic Gröbner basis together with the completion history
/// needed to express any of its elements over the original generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    engine: Engine,
    basis: Vec<usize>,
}

impl GroebnerBasis {
    pub(crate) fn finish(mut engine: Engine) -> Self {
        let basis = engine.reduced_basis();
        GroebnerBasis { engine, basis }
    }

    pub fn ring(&self) -> &RingRef {
        self.engine.ring()
    }

    /// The generators the completion started from, in caller order.
    pub fn generators(&self) -> &[Polynomial] {
        self.engine.generators()
    }

    /// Basis elements sorted by descending leading monomial.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|&k| self.engine.value(k).clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.engine.value(self.basis[0]).is_one()
    }

    pub fn stats(&self) -> CompletionStats {
        self.engine.stats
    }

    /// Basis elements with cofactors over the original generators.
    pub fn traced(&self) -> Result<Vec<TracedPolynomial>> {
        self.engine.traced(&self.basis)
    }

    /// Division by the basis (in basis order). The remainder is the
    /// unique normal form.
    pub fn reduce(&self, p: &Polynomial) -> Result<ReductionResult> {
        if !crate::poly::same_ring(p.ring(), self.ring()) {
            return Err(Error::RingMismatch);
        }
        let (remainder, combo) = self.engine.reduce_by(p, &self.basis);
        let quotients = self
            .basis
            .iter()
            .map(|k| {
                combo
                    .get(k)
                    .cloned()
                    .unwrap_or_else(|| Polynomial::zero(self.ring()))
            })
            .collect();
        Ok(ReductionResult { remainder, quotients })
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        Ok(self.reduce(p)?.remainder)
    }

    /// Cofactors `q` with `p = Σ q[j] * generators[j]` when `p` lies in the
    /// ideal, `None` otherwise.
    pub fn membership_cofactors(&self, p: &Polynomial) -> Result<Option<Vec<Polynomial>>> {
        if !crate::poly::same_ring(p.ring(), self.ring()) {
            return Err(Error::RingMismatch);
        }
        let (remainder, combo) = self.engine.reduce_by(p, &self.basis);
        if !remainder.is_zero() {
            return Ok(None);
        }
        if combo.is_empty() {
            return Ok(Some(vec![Polynomial::zero(self.ring()); self.generators().len()]));
        }
        self.engine.combine_traces(&combo).map(Some)
    }
}

/// Outcome of a completion run that polls a target polynomial.
#[derive(Clone, Debug)]
pub enum CompletionOutcome {
    /// Completion finished without a successful poll.
    Basis(GroebnerBasis),
    /// `target^power = Σ cofactors[j] * generators[j]`.
    EarlyMembership {
        power: u32,
        cofactors: Vec<Polynomial>,
    },
}

/// Computes the reduced Gröbner basis of `generators` under their ring's
/// order. Zero generators are ignored; cofactors are still indexed by the
/// caller's list.
pub fn buchberger(generators: &[Polynomial]) -> Result<GroebnerBasis> {
    let mut engine = Engine::new(generators, true)?;
    engine.run()?;
    Ok(GroebnerBasis::finish(engine))
}

/// Same as [`buchberger`], without recording cofactor traces.
pub fn buchberger_untraced(generators: &[Polynomial]) -> Result<GroebnerBasis> {
    let mut engine = Engine::new(generators, false)?;
    engine.run()?;
    Ok(GroebnerBasis::finish(engine))
}

/// Completion that divides `target^1 ..= target^max_power` by the partial
/// basis after every insertion and stops at the first zero remainder.
pub fn incremental_membership_completion(
    target: &Polynomial,
    generators: &[Polynomial],
    max_power: u32,
) -> Result<CompletionOutcome> {
    if max_power == 0 {
        return Err(Error::InvalidArgument("max_power must be at least 1".into()));
    }
    let mut engine = Engine::new(generators, true)?;
    if target.is_zero() {
        return Ok(CompletionOutcome::EarlyMembership {
            power: 1,
            cofactors: vec![Polynomial::zero(engine.ring()); generators.len()],
        });
    }
    engine = engine.with_target(target, max_power)?;
    match engine.run()? {
        Some(hit) => Ok(CompletionOutcome::EarlyMembership {
            power: hit.power,
            cofactors: hit.cofactors,
        }),
        None => Ok(CompletionOutcome::Basis(GroebnerBasis::finish(engine))),
    }
}
