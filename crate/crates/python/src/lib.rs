//! Python bindings: rings, polynomials, Gröbner bases, goal proving and
//! certificate checking.

use gbproof::certificate::{check_all, deserialize_all, serialize_all, Verdict};
use gbproof::frontend::{parse_goal, prove_goal, ProveOptions};
use gbproof::nullstellensatz::{method2_with, Method};
use gbproof::poly::{parse_polynomial, print_polynomial, MonomialOrder, Polynomial as CorePolynomial, RingRef};
use gbproof::reduction::{buchberger_untraced, reduce as core_reduce};
use gbproof::{Error, Outcome};
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_order(name: &str) -> PyResult<MonomialOrder> {
    match name {
        "lex" => Ok(MonomialOrder::Lex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        other => Err(PyValueError::new_err(format!("unknown order `{other}` (expected lex or grevlex)"))),
    }
}

fn parse_method(name: &str) -> PyResult<Method> {
    match name {
        "auto" => Ok(Method::Auto),
        "fast" => Ok(Method::FastPath),
        "fallback" => Ok(Method::Fallback),
        other => Err(PyValueError::new_err(format!("unknown method `{other}` (expected auto, fast or fallback)"))),
    }
}

/// A polynomial ring over the rationals.
#[pyclass(frozen, from_py_object, module = "gbproof_py")]
#[derive(Clone)]
pub struct Ring {
    inner: RingRef,
}

#[pymethods]
impl Ring {
    #[new]
    #[pyo3(signature = (vars, order = "grevlex"))]
    fn new(vars: Vec<String>, order: &str) -> PyResult<Self> {
        let inner = gbproof::poly::Ring::new(vars, parse_order(order)?).map_err(err)?;
        Ok(Ring { inner })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.vars().to_vec()
    }

    /// Parses `text` as a polynomial in this ring.
    fn parse(&self, text: &str) -> PyResult<Polynomial> {
        Polynomial::new(text, self)
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?})", self.inner.vars())
    }
}

#[pyclass(frozen, from_py_object, module = "gbproof_py")]
#[derive(Clone)]
pub struct Polynomial {
    inner: CorePolynomial,
}

fn wrap(p: CorePolynomial) -> Polynomial {
    Polynomial { inner: p }
}

fn operand(p: &Polynomial, other: &Bound<'_, PyAny>) -> PyResult<CorePolynomial> {
    if let Ok(o) = other.extract::<Polynomial>() {
        return Ok(o.inner);
    }
    if let Ok(n) = other.extract::<i64>() {
        return Ok(CorePolynomial::from_int(p.inner.ring(), n));
    }
    Err(PyTypeError::new_err("expected a Polynomial or an int"))
}

#[pymethods]
impl Polynomial {
    #[new]
    fn new(text: &str, ring: &Ring) -> PyResult<Self> {
        Ok(wrap(parse_polynomial(text, &ring.inner).map_err(err)?))
    }

    #[getter]
    fn ring(&self) -> Ring {
        Ring {
            inner: self.inner.ring().clone(),
        }
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn total_degree(&self) -> Option<u64> {
        self.inner.total_degree()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        print_polynomial(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({:?})", print_polynomial(&self.inner))
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        operand(self, other).is_ok_and(|o| o == self.inner)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.terms().hash(&mut h);
        h.finish()
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        Ok(wrap(self.inner.checked_add(&operand(self, other)?).map_err(err)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        Ok(wrap(self.inner.checked_sub(&operand(self, other)?).map_err(err)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        Ok(wrap(operand(self, other)?.checked_sub(&self.inner).map_err(err)?))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        Ok(wrap(self.inner.checked_mul(&operand(self, other)?).map_err(err)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Polynomial> {
        self.__mul__(other)
    }

    fn __neg__(&self) -> Polynomial {
        wrap(-&self.inner)
    }

    fn __pow__(&self, n: u32, modulo: Option<&Bound<'_, PyAny>>) -> PyResult<Polynomial> {
        if modulo.is_some() {
            return Err(PyTypeError::new_err("modular powers are not supported"));
        }
        Ok(wrap(self.inner.pow(n).map_err(err)?))
    }
}

fn cores(polys: &[Polynomial]) -> Vec<CorePolynomial> {
    polys.iter().map(|p| p.inner.clone()).collect()
}

/// Reduced monic Gröbner basis of `polys` under their ring's order.
#[pyfunction]
fn groebner_basis(polys: Vec<Polynomial>) -> PyResult<Vec<Polynomial>> {
    let gb = buchberger_untraced(&cores(&polys)).map_err(err)?;
    Ok(gb.polynomials().into_iter().map(wrap).collect())
}

/// Divides `p` by `divisors`; returns `(quotients, remainder)`.
#[pyfunction]
fn reduce(p: &Polynomial, divisors: Vec<Polynomial>) -> PyResult<(Vec<Polynomial>, Polynomial)> {
    let r = core_reduce(&p.inner, &cores(&divisors)).map_err(err)?;
    Ok((r.quotients.into_iter().map(wrap).collect(), wrap(r.remainder)))
}

/// `(power, scale, cofactors)` with `scale * target^power = Σ cofactors[i] * generators[i]`,
/// or `None` when no certificate is found.
#[pyfunction]
#[pyo3(signature = (target, generators, max_power = 6, method = "auto"))]
fn radical_certificate(
    target: &Polynomial,
    generators: Vec<Polynomial>,
    max_power: u32,
    method: &str,
) -> PyResult<Option<(u32, String, Vec<Polynomial>)>> {
    match method2_with(&target.inner, &cores(&generators), max_power, parse_method(method)?).map_err(err)? {
        Outcome::Found(c) => Ok(Some((c.power, c.scale.to_string(), c.cofactors.into_iter().map(wrap).collect()))),
        Outcome::NotFound(_) => Ok(None),
    }
}

/// Result of proving a goal file.
#[pyclass(frozen, get_all, module = "gbproof_py")]
pub struct ProofResult {
    /// Whether a certificate was found.
    found: bool,
    /// Certificate file text, when found.
    certificate: Option<String>,
    /// Rendered identity, one line per identity, when found.
    identity: Option<String>,
    /// `(name, polynomial)` witness bindings for predicate goals.
    witnesses: Vec<(String, String)>,
    /// Why no certificate was found.
    reason: Option<String>,
    /// True when the failure is a completed search rather than a cap.
    definitive: bool,
}

#[pymethods]
impl ProofResult {
    fn __bool__(&self) -> bool {
        self.found
    }

    fn __repr__(&self) -> String {
        if self.found {
            format!("ProofResult(found=True, identity={:?})", self.identity.as_deref().unwrap_or(""))
        } else {
            format!("ProofResult(found=False, reason={:?})", self.reason.as_deref().unwrap_or(""))
        }
    }
}

/// Proves the goal described by `goal_text` in the goal-file format.
#[pyfunction]
#[pyo3(signature = (goal_text, max_power = 6, method = "auto", order = "grevlex"))]
fn prove(goal_text: &str, max_power: u32, method: &str, order: &str) -> PyResult<ProofResult> {
    let goal = parse_goal(goal_text).map_err(err)?;
    let opts = ProveOptions {
        max_power,
        method: parse_method(method)?,
        order: parse_order(order)?,
    };
    Ok(match prove_goal(&goal, &opts).map_err(err)? {
        Outcome::Found(g) => ProofResult {
            found: true,
            certificate: Some(serialize_all(&g.certificates().map_err(err)?)),
            identity: Some(g.rendered_identity()),
            witnesses: g
                .witnesses()
                .into_iter()
                .map(|(n, w)| (n, print_polynomial(&w)))
                .collect(),
            reason: None,
            definitive: false,
        },
        Outcome::NotFound(why) => ProofResult {
            found: false,
            certificate: None,
            identity: None,
            witnesses: Vec::new(),
            definitive: why.is_definitive(),
            reason: Some(why.to_string()),
        },
    })
}

/// Checks certificate text. Returns `(valid, reason)`; raises `ValueError`
/// on malformed input.
#[pyfunction]
fn check(certificate_text: &str) -> PyResult<(bool, Option<String>)> {
    let certs = deserialize_all(certificate_text).map_err(err)?;
    Ok(match check_all(&certs).map_err(err)? {
        Verdict::Valid => (true, None),
        Verdict::Invalid(why) => (false, Some(why)),
    })
}

#[pymodule]
fn gbproof_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Ring>()?;
    m.add_class::<Polynomial>()?;
    m.add_class::<ProofResult>()?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(radical_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(prove, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
