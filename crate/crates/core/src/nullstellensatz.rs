//! Nullstellensatz certificates.
//!
//! A unit certificate shows `1 = Σ Q_i P_i`; a radical certificate shows
//! `c * P^r = Σ Q_i P_i`. Both are checked by expansion before they are
//! returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{
    dot, same_ring, BlockOrder, Monomial, MonomialOrder, OrderBlock, Polynomial, Rational, RingRef,
};
use crate::reduction::{buchberger_untraced, incremental_membership_completion, CompletionOutcome};

/// Result of a certificate search. Failing to find a certificate is not an
/// error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    NotFound(NotFound),
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            Outcome::NotFound(_) => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }
}

/// Why a search came back empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotFound {
    /// A full basis shows that 1 is not in the ideal.
    NotInIdeal,
    /// The target is not in the radical of the ideal.
    NotInRadical,
    /// No power up to `max_power` lies in the ideal; a higher one might.
    PowerCap { max_power: u32 },
    /// An identity exists but does not yield literal witnesses.
    WitnessExtractionFailed { power: u32, scale: BigInt },
}

impl NotFound {
    /// True when the answer holds for every power, not just those tried.
    pub fn is_definitive(&self) -> bool {
        matches!(self, NotFound::NotInIdeal | NotFound::NotInRadical)
    }
}

impl std::fmt::Display for NotFound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotFound::NotInIdeal => write!(f, "the goal polynomial is not in the ideal generated by the hypotheses"),
            NotFound::NotInRadical => write!(f, "the goal polynomial is not in the radical of the hypothesis ideal"),
            NotFound::PowerCap { max_power } => {
                write!(f, "no power of the goal polynomial up to {max_power} is in the ideal")
            }
            NotFound::WitnessExtractionFailed { power, scale } => write!(
                f,
                "found {scale} * p^{power} in the ideal, but witnesses need power 1 and scale 1 or -1"
            ),
        }
    }
}

/// `1 = Σ cofactors[i] * generators[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCertificate {
    pub cofactors: Vec<Polynomial>,
}

/// `scale * target^power = Σ cofactors[i] * generators[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalCertificate {
    pub power: u32,
    pub scale: BigInt,
    pub cofactors: Vec<Polynomial>,
}

impl RadicalCertificate {
    /// Expands both sides and compares them.
    pub fn holds(&self, target: &Polynomial, generators: &[Polynomial]) -> Result<bool> {
        if self.cofactors.len() != generators.len() {
            return Ok(false);
        }
        let ring = target.ring();
        let lhs = target
            .pow(self.power)?
            .scale(&Rational::from_integer(self.scale.clone()));
        Ok(dot(ring, &self.cofactors, generators)? == lhs)
    }
}

/// Which path `method2` may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    /// Membership polling first, then the extra-variable construction.
    #[default]
    Auto,
    FastPath,
    Fallback,
}

fn check_generators(generators: &[Polynomial]) -> Result<&RingRef> {
    let Some(first) = generators.first() else {
        return Err(Error::EmptySystem);
    };
    let ring = first.ring();
    if generators.iter().any(|g| !same_ring(g.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    Ok(ring)
}

/// Looks for `Q` with `1 = Σ Q_i P_i` by completing `{t P_i - e_i, e_i e_j, e_i t}`
/// under an order with `t` above the original variables above the `e_i`,
/// then reducing `t`.
pub fn method1_unit_certificate(generators: &[Polynomial]) -> Result<Outcome<UnitCertificate>> {
    let ring = check_generators(generators)?.clone();
    let n = ring.nvars();
    let s = generators.len();
    let mut extra: Vec<String> = Vec::with_capacity(s + 1);
    for i in 1..=s {
        let name = ring.fresh_name(&format!("e{i}"), &extra);
        extra.push(name);
    }
    let t_name = ring.fresh_name("t", &extra);
    extra.push(t_name);
    let t_idx = n + s;
    let order = MonomialOrder::block(
        vec![
            OrderBlock {
                vars: vec![t_idx],
                order: BlockOrder::Lex,
            },
            OrderBlock {
                vars: (0..n).collect(),
                order: BlockOrder::GrevLex,
            },
            OrderBlock {
                vars: (n..n + s).collect(),
                order: BlockOrder::GrevLex,
            },
        ],
        n + s + 1,
    )?;
    let big = ring.extended(extra, order)?;
    let t = Polynomial::var(&big, t_idx);
    let e: Vec<Polynomial> = (0..s).map(|i| Polynomial::var(&big, n + i)).collect();

    let mut aux = Vec::with_capacity(s + s * (s + 1) / 2 + s);
    for (g, ei) in generators.iter().zip(&e) {
        aux.push(&t * &g.in_ring(&big)? - ei);
    }
    for i in 0..s {
        for j in i..s {
            aux.push(&e[i] * &e[j]);
        }
        aux.push(&e[i] * &t);
    }
    let gb = buchberger_untraced(&aux)?;
    let nf = gb.normal_form(&t)?;

    // expect Σ Q_i(X) e_i
    let mut buckets: Vec<Vec<(Rational, Monomial)>> = vec![Vec::new(); s];
    for term in nf.terms() {
        let ex = term.mono.exponents();
        let e_part: Vec<usize> = (n..n + s).filter(|&v| ex[v] > 0).collect();
        if ex[t_idx] > 0 || e_part.len() != 1 || ex[e_part[0]] != 1 {
            return Ok(Outcome::NotFound(NotFound::NotInIdeal));
        }
        buckets[e_part[0] - n].push((term.coeff.clone(), Monomial::from_exponents(ex[..n].to_vec())));
    }
    let cofactors: Vec<Polynomial> = buckets
        .into_iter()
        .map(|b| Polynomial::from_terms(&ring, b))
        .collect();
    if !dot(&ring, &cofactors, generators)?.is_one() {
        return Err(Error::Internal("unit certificate does not expand to 1".into()));
    }
    Ok(Outcome::Found(UnitCertificate { cofactors }))
}

/// [`method2_with`] using [`Method::Auto`].
pub fn method2_radical_certificate(
    target: &Polynomial,
    generators: &[Polynomial],
    max_power: u32,
) -> Result<Outcome<RadicalCertificate>> {
    method2_with(target, generators, max_power, Method::Auto)
}

/// Looks for `r` and `Q` with `target^r = Σ Q_i P_i`.
///
/// The fast path polls powers up to `max_power` during completion and
/// then reduces them by the finished basis. The fallback adjoins `z`,
/// finds a unit certificate for `P_1, …, P_s, 1 - z * target`, and clears
/// `z`; it is not bounded by `max_power`.
pub fn method2_with(
    target: &Polynomial,
    generators: &[Polynomial],
    max_power: u32,
    method: Method,
) -> Result<Outcome<RadicalCertificate>> {
    let ring = check_generators(generators)?.clone();
    if !same_ring(target.ring(), &ring) {
        return Err(Error::RingMismatch);
    }
    if max_power == 0 {
        return Err(Error::InvalidArgument("max_power must be at least 1".into()));
    }
    if target.is_zero() {
        return Ok(Outcome::Found(RadicalCertificate {
            power: 1,
            scale: BigInt::one(),
            cofactors: vec![Polynomial::zero(&ring); generators.len()],
        }));
    }
    if generators.iter().all(Polynomial::is_zero) {
        return Ok(Outcome::NotFound(if method == Method::FastPath {
            NotFound::PowerCap { max_power }
        } else {
            NotFound::NotInRadical
        }));
    }
    if method != Method::Fallback {
        if let Some(cert) = fast_path(target, generators, max_power)? {
            return Ok(Outcome::Found(cert));
        }
        if method == Method::FastPath {
            return Ok(Outcome::NotFound(NotFound::PowerCap { max_power }));
        }
    }
    fallback(target, generators)
}

fn fast_path(target: &Polynomial, generators: &[Polynomial], max_power: u32) -> Result<Option<RadicalCertificate>> {
    let cert = |power, cofactors| RadicalCertificate {
        power,
        scale: BigInt::one(),
        cofactors,
    };
    match incremental_membership_completion(target, generators, max_power)? {
        CompletionOutcome::EarlyMembership { power, cofactors } => Ok(Some(cert(power, cofactors))),
        CompletionOutcome::Basis(gb) => {
            let mut p = Polynomial::one(target.ring());
            for k in 1..=max_power {
                p = p.checked_mul(target)?;
                if let Some(q) = gb.membership_cofactors(&p)? {
                    return Ok(Some(cert(k, q)));
                }
            }
            Ok(None)
        }
    }
}

fn fallback(target: &Polynomial, generators: &[Polynomial]) -> Result<Outcome<RadicalCertificate>> {
    let ring = target.ring();
    let z_name = ring.fresh_name("z", &[]);
    let zr = ring.extended([z_name], MonomialOrder::GrevLex)?;
    let z_idx = ring.nvars();
    let mut lifted: Vec<Polynomial> = generators.iter().map(|g| g.in_ring(&zr)).collect::<Result<_>>()?;
    let target_z = target.in_ring(&zr)?;
    lifted.push(Polynomial::one(&zr) - Polynomial::var(&zr, z_idx) * target_z);
    let unit = match method1_unit_certificate(&lifted)? {
        Outcome::Found(u) => u,
        Outcome::NotFound(_) => return Ok(Outcome::NotFound(NotFound::NotInRadical)),
    };
    let h = &unit.cofactors[..generators.len()];
    let r = h.iter().map(|p| p.degree_in(z_idx)).max().unwrap_or(0).max(1);
    // target^0 .. target^r
    let mut powers = vec![Polynomial::one(ring)];
    for k in 1..=r as usize {
        let next = powers[k - 1].checked_mul(target)?;
        powers.push(next);
    }
    let mut cofactors = Vec::with_capacity(generators.len());
    for hi in h {
        let mut q = Polynomial::zero(ring);
        for (j, c) in hi.coefficients_in(z_idx).into_iter().enumerate() {
            if !c.is_zero() {
                q = q + c.in_ring(ring)? * &powers[r as usize - j];
            }
        }
        cofactors.push(q);
    }
    let cert = RadicalCertificate {
        power: r,
        scale: BigInt::one(),
        cofactors,
    };
    if !cert.holds(target, generators)? {
        return Err(Error::Internal("fallback certificate does not expand".into()));
    }
    Ok(Outcome::Found(cert))
}

/// Clears cofactor denominators: the scale becomes the least common
/// multiple of all of them and every cofactor is multiplied accordingly.
pub fn integer_scale(
    cert: &RadicalCertificate,
    target: &Polynomial,
    generators: &[Polynomial],
) -> Result<RadicalCertificate> {
    if !target.is_integral() {
        return Err(Error::NonIntegral("target".into()));
    }
    if let Some(i) = generators.iter().position(|g| !g.is_integral()) {
        return Err(Error::NonIntegral(format!("generator {}", i + 1)));
    }
    if cert.scale.is_zero() {
        return Err(Error::InvalidArgument("certificate scale is zero".into()));
    }
    let l = cert
        .cofactors
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(&q.denominator_lcm()));
    let factor = Rational::from_integer(l.clone());
    Ok(RadicalCertificate {
        power: cert.power,
        scale: &cert.scale * l,
        cofactors: cert.cofactors.iter().map(|q| q.scale(&factor)).collect(),
    })
}
