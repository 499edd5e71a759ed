//! Buchberger completion with lazily expanded cofactor traces.
//!
//! Every polynomial that enters the basis records how it was built from
//! earlier basis elements (its recipe). Cofactors over the original
//! generators are expanded only when a caller asks for them, which keeps
//! completion cheap when only the basis itself is needed.

use std::collections::BTreeMap;

use num_traits::One;

use super::division::{divide, has_term_divisible_by};
use super::traced::TracedPolynomial;
use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, Polynomial, Rational, RingRef, Term};

/// `elem = scale * (generator + Σ multiplier * elems[index])`.
#[derive(Clone, Debug)]
struct Recipe {
    scale: Rational,
    generator: Option<usize>,
    parts: Vec<(usize, Polynomial)>,
}

#[derive(Clone, Debug)]
struct Elem {
    value: Polynomial,
    recipe: Recipe,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: u64,
}

#[derive(Clone, Debug)]
struct PowerState {
    remainder: Polynomial,
    quotients: BTreeMap<usize, Polynomial>,
    polled: bool,
}

#[derive(Clone, Debug)]
struct Poller {
    states: Vec<PowerState>,
}

/// Counters reported by a completion run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub pairs_reduced: usize,
    pub pairs_pruned: usize,
    pub insertions: usize,
    pub polls: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Engine {
    ring: RingRef,
    generators: Vec<Polynomial>,
    elems: Vec<Elem>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    seq: u64,
    track: bool,
    poller: Option<Poller>,
    pub(crate) stats: CompletionStats,
}

/// A membership hit: `target^power = Σ cofactors[j] * generators[j]`.
pub(crate) struct Hit {
    pub power: u32,
    pub cofactors: Vec<Polynomial>,
}

impl Engine {
    pub(crate) fn new(generators: &[Polynomial], track: bool) -> Result<Engine> {
        let Some(first) = generators.first() else {
            return Err(Error::EmptySystem);
        };
        if generators.iter().any(|g| !same_ring(g.ring(), first.ring())) {
            return Err(Error::RingMismatch);
        }
        if generators.iter().all(Polynomial::is_zero) {
            return Err(Error::EmptySystem);
        }
        Ok(Engine {
            ring: first.ring().clone(),
            generators: generators.to_vec(),
            elems: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            seq: 0,
            track,
            poller: None,
            stats: CompletionStats::default(),
        })
    }

    /// Polls `target^1 ..= target^max_power` after every insertion.
    pub(crate) fn with_target(mut self, target: &Polynomial, max_power: u32) -> Result<Engine> {
        if !same_ring(target.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut states = Vec::with_capacity(max_power as usize);
        let mut power = target.clone();
        for k in 1..=max_power {
            if k > 1 {
                power = power.checked_mul(target)?;
            }
            states.push(PowerState {
                remainder: power.clone(),
                quotients: BTreeMap::new(),
                polled: false,
            });
        }
        self.poller = Some(Poller { states });
        Ok(self)
    }

    pub(crate) fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub(crate) fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Runs completion to the end, or until a poll succeeds.
    pub(crate) fn run(&mut self) -> Result<Option<Hit>> {
        for m in 0..self.generators.len() {
            let g = self.generators[m].clone();
            if g.is_zero() {
                continue;
            }
            let (rem, quots) = self.reduce_by_active(&g);
            if rem.is_zero() {
                continue;
            }
            let parts = self.negated_parts(quots);
            self.insert(rem, Some(m), parts);
            if let Some(hit) = self.poll()? {
                return Ok(Some(hit));
            }
        }
        while let Some(pair) = self.pop_pair() {
            self.stats.pairs_reduced += 1;
            let (s, mut parts) = self.s_poly(pair.i, pair.j, &pair.lcm);
            if s.is_zero() {
                continue;
            }
            let (rem, quots) = self.reduce_by_active(&s);
            if rem.is_zero() {
                continue;
            }
            parts.extend(self.negated_parts(quots));
            self.insert(rem, None, parts);
            if let Some(hit) = self.poll()? {
                return Ok(Some(hit));
            }
        }
        Ok(None)
    }

    fn s_poly(&self, i: usize, j: usize, lcm: &Monomial) -> (Polynomial, Vec<(usize, Polynomial)>) {
        let (f, g) = (&self.elems[i].value, &self.elems[j].value);
        let mf = lcm.div(f.leading_monomial().unwrap()).expect("lcm");
        let mg = lcm.div(g.leading_monomial().unwrap()).expect("lcm");
        let one = Rational::one();
        // basis elements are monic, so the leading terms cancel exactly
        let ft = Polynomial::from_sorted(&self.ring, f.terms()[1..].to_vec());
        let gt = Polynomial::from_sorted(&self.ring, g.terms()[1..].to_vec());
        let s = ft.mul_term(&one, &mf) - gt.mul_term(&one, &mg);
        let parts = if self.track {
            vec![
                (i, Polynomial::monomial(&self.ring, one.clone(), mf)),
                (j, Polynomial::monomial(&self.ring, -one, mg)),
            ]
        } else {
            Vec::new()
        };
        (s, parts)
    }

    fn reduce_by_active(&self, p: &Polynomial) -> (Polynomial, Vec<(usize, Vec<Term>)>) {
        let divisors: Vec<&Polynomial> = self.active.iter().map(|&k| &self.elems[k].value).collect();
        let (rem, quots) = divide(p, &divisors);
        let quots = self
            .active
            .iter()
            .copied()
            .zip(quots)
            .filter(|(_, q)| !q.is_empty())
            .collect();
        (rem, quots)
    }

    fn negated_parts(&self, quots: Vec<(usize, Vec<Term>)>) -> Vec<(usize, Polynomial)> {
        if !self.track {
            return Vec::new();
        }
        quots
            .into_iter()
            .map(|(k, q)| (k, -Polynomial::from_sorted(&self.ring, q)))
            .collect()
    }

    fn insert(&mut self, value: Polynomial, generator: Option<usize>, parts: Vec<(usize, Polynomial)>) {
        let (value, lc) = value.monic();
        let h = self.elems.len();
        self.elems.push(Elem {
            value,
            recipe: Recipe {
                scale: Rational::one() / lc,
                generator,
                parts,
            },
        });
        self.stats.insertions += 1;
        self.update_pairs(h);
    }

    /// Gebauer–Möller update: product and chain criteria.
    fn update_pairs(&mut self, h: usize) {
        let lm_h = self.lm(h).clone();
        let mut candidates: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, lm_h.lcm(self.lm(g))))
            .collect();
        let before = self.pairs.len() + candidates.len();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while !candidates.is_empty() {
            let (g, l) = candidates.remove(0);
            let coprime = lm_h.is_coprime(self.lm(g));
            if coprime
                || (!candidates.iter().any(|(_, l2)| l2.divides(&l))
                    && !kept.iter().any(|(_, l2)| l2.divides(&l)))
            {
                kept.push((g, l));
            }
        }
        kept.retain(|(g, _)| !lm_h.is_coprime(self.lm(*g)));
        let elems = &self.elems;
        let lm = |k: usize| elems[k].value.leading_monomial().unwrap();
        self.pairs.retain(|p| {
            !lm_h.divides(&p.lcm) || lm_h.lcm(lm(p.i)) == p.lcm || lm_h.lcm(lm(p.j)) == p.lcm
        });
        for (g, l) in kept {
            self.seq += 1;
            self.pairs.push(Pair {
                i: g,
                j: h,
                lcm: l,
                seq: self.seq,
            });
        }
        self.stats.pairs_pruned += before - self.pairs.len();
        self.active.retain(|&g| !lm_h.divides(lm(g)));
        self.active.push(h);
    }

    fn lm(&self, k: usize) -> &Monomial {
        self.elems[k].value.leading_monomial().expect("basis elements are nonzero")
    }

    /// Normal strategy: smallest lcm first, ties broken by creation order.
    fn pop_pair(&mut self) -> Option<Pair> {
        let ord = self.ring.order();
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| ord.cmp(&a.lcm, &b.lcm).then(a.seq.cmp(&b.seq)))
            .map(|(i, _)| i)?;
        Some(self.pairs.swap_remove(best))
    }

    fn poll(&mut self) -> Result<Option<Hit>> {
        let Some(mut poller) = self.poller.take() else {
            return Ok(None);
        };
        self.stats.polls += 1;
        let newest = *self.active.last().expect("poll after insertion");
        let lm_new = self.lm(newest).clone();
        let mut hit = None;
        for (k, state) in poller.states.iter_mut().enumerate() {
            if !state.remainder.is_zero()
                && (!state.polled || has_term_divisible_by(&state.remainder, &lm_new))
            {
                let (rem, quots) = self.reduce_by_active(&state.remainder);
                for (idx, q) in quots {
                    let q = Polynomial::from_sorted(&self.ring, q);
                    let e = state
                        .quotients
                        .entry(idx)
                        .or_insert_with(|| Polynomial::zero(&self.ring));
                    *e = &*e + &q;
                }
                state.remainder = rem;
            }
            state.polled = true;
            if state.remainder.is_zero() {
                hit = Some((k as u32 + 1, state.quotients.clone()));
                break;
            }
        }
        self.poller = Some(poller);
        match hit {
            None => Ok(None),
            Some((power, quotients)) => {
                let cofactors = self.combine_traces(&quotients)?;
                Ok(Some(Hit { power, cofactors }))
            }
        }
    }

    /// `Σ multiplier * trace(index)` over the original generators.
    pub(crate) fn combine_traces(&self, combo: &BTreeMap<usize, Polynomial>) -> Result<Vec<Polynomial>> {
        if !self.track {
            return Err(Error::Internal("cofactors requested from an untracked completion".into()));
        }
        let traces = self.expand_traces(combo.keys().copied());
        let mut out = vec![Polynomial::zero(&self.ring); self.generators.len()];
        for (idx, mult) in combo {
            for (o, t) in out.iter_mut().zip(&traces[idx]) {
                if !t.is_zero() {
                    *o = &*o + &(mult * t);
                }
            }
        }
        Ok(out)
    }

    /// Expands the traces of `wanted` and everything they depend on.
    pub(crate) fn expand_traces(&self, wanted: impl IntoIterator<Item = usize>) -> BTreeMap<usize, Vec<Polynomial>> {
        let mut need = vec![false; self.elems.len()];
        let mut stack: Vec<usize> = wanted.into_iter().collect();
        while let Some(k) = stack.pop() {
            if need[k] {
                continue;
            }
            need[k] = true;
            stack.extend(self.elems[k].recipe.parts.iter().map(|(d, _)| *d));
        }
        let n = self.generators.len();
        let mut traces: BTreeMap<usize, Vec<Polynomial>> = BTreeMap::new();
        for k in (0..self.elems.len()).filter(|&k| need[k]) {
            let r = &self.elems[k].recipe;
            let mut tr = vec![Polynomial::zero(&self.ring); n];
            if let Some(g) = r.generator {
                tr[g] = Polynomial::one(&self.ring);
            }
            for (dep, mult) in &r.parts {
                for (t, d) in tr.iter_mut().zip(&traces[dep]) {
                    if !d.is_zero() {
                        *t = &*t + &(mult * d);
                    }
                }
            }
            if !r.scale.is_one() {
                for t in tr.iter_mut() {
                    *t = t.scale(&r.scale);
                }
            }
            traces.insert(k, tr);
        }
        traces
    }

    /// Inter-reduces the active set into the reduced Gröbner basis and
    /// returns its element indices sorted by descending leading monomial.
    pub(crate) fn reduced_basis(&mut self) -> Vec<usize> {
        let ord = self.ring.order().clone();
        let mut basis = self.active.clone();
        basis.sort_by(|&a, &b| ord.cmp(self.lm(b), self.lm(a)));
        for pos in 0..basis.len() {
            let k = basis[pos];
            let others: Vec<usize> = basis.iter().copied().filter(|&o| o != k).collect();
            let divisors: Vec<&Polynomial> = others.iter().map(|&o| &self.elems[o].value).collect();
            let (rem, quots) = divide(&self.elems[k].value, &divisors);
            if quots.iter().all(Vec::is_empty) {
                continue;
            }
            debug_assert!(rem.is_monic());
            let parts = if self.track {
                let mut parts = vec![(k, Polynomial::one(&self.ring))];
                for (o, q) in others.iter().zip(quots) {
                    if !q.is_empty() {
                        parts.push((*o, -Polynomial::from_sorted(&self.ring, q)));
                    }
                }
                parts
            } else {
                Vec::new()
            };
            let idx = self.elems.len();
            self.elems.push(Elem {
                value: rem,
                recipe: Recipe {
                    scale: Rational::one(),
                    generator: None,
                    parts,
                },
            });
            basis[pos] = idx;
        }
        basis
    }

    pub(crate) fn value(&self, k: usize) -> &Polynomial {
        &self.elems[k].value
    }

    pub(crate) fn traced(&self, indices: &[usize]) -> Result<Vec<TracedPolynomial>> {
        if !self.track {
            return Err(Error::Internal("traces requested from an untracked completion".into()));
        }
        let traces = self.expand_traces(indices.iter().copied());
        Ok(indices
            .iter()
            .map(|k| TracedPolynomial {
                value: self.elems[*k].value.clone(),
                trace: traces[k].clone(),
            })
            .collect())
    }

    /// Divides `p` by the given basis elements, returning the remainder and
    /// the quotient keyed by element index.
    pub(crate) fn reduce_by(&self, p: &Polynomial, indices: &[usize]) -> (Polynomial, BTreeMap<usize, Polynomial>) {
        let divisors: Vec<&Polynomial> = indices.iter().map(|&k| &self.elems[k].value).collect();
        let (rem, quots) = divide(p, &divisors);
        let combo = indices
            .iter()
            .copied()
            .zip(quots)
            .filter(|(_, q)| !q.is_empty())
            .map(|(k, q)| (k, Polynomial::from_sorted(&self.ring, q)))
            .collect();
        (rem, combo)
    }
}
