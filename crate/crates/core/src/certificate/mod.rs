//! Certificate files and the expansion checker.
//!
//! This module depends on the polynomial layer only. It must never reach
//! into the prover, so that checking a certificate does not trust the code
//! that produced it.

mod sexp;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{dot, parse_polynomial, print_polynomial, MonomialOrder, Polynomial, Rational, Ring, RingRef};
use sexp::{quote, read_all, Pos, Sexp};

/// The only format version this build reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// Coefficient domain of a goal.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Real,
    Integer,
}

impl Mode {
    pub fn tag(self) -> &'static str {
        match self {
            Mode::Real => "R",
            Mode::Integer => "Z",
        }
    }

    pub fn from_tag(s: &str) -> Option<Mode> {
        match s {
            "R" => Some(Mode::Real),
            "Z" => Some(Mode::Integer),
            _ => None,
        }
    }
}

/// `scale * target^power = Σ cofactors[i] * generators[i]` over `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFile {
    pub mode: Mode,
    pub target: Polynomial,
    pub power: u32,
    pub scale: BigInt,
    pub generators: Vec<Polynomial>,
    pub cofactors: Vec<Polynomial>,
    /// Named values of existential variables, if the goal had any.
    pub witnesses: Vec<(String, Polynomial)>,
    pub note: Option<String>,
}

/// Result of [`check`] on a structurally sound certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        *self == Verdict::Valid
    }
}

/// The grevlex ring over `vars` used for every certificate polynomial.
pub fn certificate_ring<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<RingRef> {
    Ring::new(vars, MonomialOrder::GrevLex)
}

impl CertificateFile {
    /// Builds a certificate, moving all polynomials into the canonical ring
    /// over the target's variables.
    pub fn new(
        mode: Mode,
        target: &Polynomial,
        power: u32,
        scale: BigInt,
        generators: &[Polynomial],
        cofactors: &[Polynomial],
    ) -> Result<CertificateFile> {
        let ring = certificate_ring(target.ring().vars().to_vec())?;
        let lift = |ps: &[Polynomial]| ps.iter().map(|p| p.in_ring(&ring)).collect::<Result<Vec<_>>>();
        Ok(CertificateFile {
            mode,
            target: target.in_ring(&ring)?,
            power,
            scale,
            generators: lift(generators)?,
            cofactors: lift(cofactors)?,
            witnesses: Vec::new(),
            note: None,
        })
    }

    pub fn ring(&self) -> &RingRef {
        self.target.ring()
    }

    pub fn vars(&self) -> &[String] {
        self.ring().vars()
    }

    /// Structural checks that do not need any expansion.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedCertificate(m));
        if self.generators.len() != self.cofactors.len() {
            return bad(format!(
                "{} generators but {} cofactors",
                self.generators.len(),
                self.cofactors.len()
            ));
        }
        if self.power < 1 {
            return bad("power must be at least 1".into());
        }
        if self.scale.is_zero() {
            return bad("scale must be nonzero".into());
        }
        let ring = self.ring();
        let all = self
            .generators
            .iter()
            .chain(&self.cofactors)
            .chain(self.witnesses.iter().map(|(_, w)| w));
        for p in all {
            if p.ring().vars() != ring.vars() {
                return bad("polynomials over different variable lists".into());
            }
        }
        Ok(())
    }
}

/// Expands `Σ cofactors[i] * generators[i] - scale * target^power` exactly.
///
/// Structural problems are errors; a nonzero residual is `Invalid`.
pub fn check(cert: &CertificateFile) -> Result<Verdict> {
    cert.validate()?;
    let ring = cert.ring();
    let lift = |p: &Polynomial| p.in_ring(ring);
    if cert.mode == Mode::Integer {
        let named = std::iter::once(("target", &cert.target))
            .chain(cert.generators.iter().map(|g| ("generator", g)))
            .chain(cert.cofactors.iter().map(|q| ("cofactor", q)));
        for (what, p) in named {
            if !p.is_integral() {
                return Ok(Verdict::Invalid(format!(
                    "non-integer coefficient in {what} `{}`",
                    print_polynomial(p)
                )));
            }
        }
    }
    let gens: Vec<Polynomial> = cert.generators.iter().map(lift).collect::<Result<_>>()?;
    let cofs: Vec<Polynomial> = cert.cofactors.iter().map(lift).collect::<Result<_>>()?;
    let lhs = cert
        .target
        .pow(cert.power)?
        .scale(&Rational::from_integer(cert.scale.clone()));
    let residual = dot(ring, &cofs, &gens)? - lhs;
    if residual.is_zero() {
        Ok(Verdict::Valid)
    } else {
        Ok(Verdict::Invalid(format!("nonzero residual {}", print_polynomial(&residual))))
    }
}

/// Checks every certificate; the first failure wins.
pub fn check_all(certs: &[CertificateFile]) -> Result<Verdict> {
    for (k, c) in certs.iter().enumerate() {
        if let Verdict::Invalid(why) = check(c)? {
            if certs.len() == 1 {
                return Ok(Verdict::Invalid(why));
            }
            return Ok(Verdict::Invalid(format!("certificate {}: {why}", k + 1)));
        }
    }
    Ok(Verdict::Valid)
}

fn write_poly_list(out: &mut String, head: &str, ps: &[Polynomial]) {
    write!(out, "  ({head}").unwrap();
    for p in ps {
        write!(out, "\n    {}", quote(&print_polynomial(p))).unwrap();
    }
    out.push_str(")\n");
}

/// Canonical text form of one certificate.
pub fn serialize(cert: &CertificateFile) -> String {
    let mut out = String::from("(certificate\n");
    writeln!(out, "  (version {FORMAT_VERSION})").unwrap();
    out.push_str("  (vars");
    for v in cert.vars() {
        write!(out, " {v}").unwrap();
    }
    out.push_str(")\n");
    writeln!(out, "  (mode {})", cert.mode.tag()).unwrap();
    writeln!(out, "  (target {})", quote(&print_polynomial(&cert.target))).unwrap();
    writeln!(out, "  (pow {})", cert.power).unwrap();
    writeln!(out, "  (scale {})", cert.scale).unwrap();
    write_poly_list(&mut out, "gens", &cert.generators);
    write_poly_list(&mut out, "cofactors", &cert.cofactors);
    if !cert.witnesses.is_empty() {
        out.push_str("  (witnesses");
        for (name, w) in &cert.witnesses {
            write!(out, "\n    ({name} {})", quote(&print_polynomial(w))).unwrap();
        }
        out.push_str(")\n");
    }
    if let Some(note) = &cert.note {
        writeln!(out, "  (note {})", quote(note)).unwrap();
    }
    // drop the final newline so the closing paren sits on the last field
    out.pop();
    out.push_str(")\n");
    out
}

/// Several certificates, separated by blank lines.
pub fn serialize_all(certs: &[CertificateFile]) -> String {
    certs.iter().map(serialize).collect::<Vec<_>>().join("\n")
}

/// Parses a file holding exactly one certificate.
pub fn deserialize(text: &str) -> Result<CertificateFile> {
    let mut all = deserialize_all(text)?;
    if all.len() != 1 {
        return Err(Error::MalformedCertificate(format!(
            "expected one certificate, found {}",
            all.len()
        )));
    }
    Ok(all.pop().unwrap())
}

/// Parses every `(certificate ...)` form in `text`.
pub fn deserialize_all(text: &str) -> Result<Vec<CertificateFile>> {
    let forms = read_all(text)?;
    if forms.is_empty() {
        return Err(Error::MalformedCertificate("no certificate found".into()));
    }
    forms.iter().map(from_sexp).collect()
}

fn perr(pos: Pos, msg: impl Into<String>) -> Error {
    Error::parse(pos.line, pos.column, msg)
}

fn atom(s: &Sexp) -> Result<&str> {
    match s {
        Sexp::Atom(a, _) => Ok(a),
        other => Err(perr(other.pos(), "expected an atom")),
    }
}

fn string(s: &Sexp) -> Result<(&str, Pos)> {
    match s {
        Sexp::Str(a, p) => Ok((a, *p)),
        other => Err(perr(other.pos(), "expected a quoted polynomial")),
    }
}

fn poly_at(text: &str, pos: Pos, ring: &RingRef) -> Result<Polynomial> {
    parse_polynomial(text, ring).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            // positions inside the string, shifted past the opening quote
            let (l, c) = if line == 1 {
                (pos.line, pos.column + column)
            } else {
                (pos.line + line - 1, column)
            };
            Error::parse(l, c, message)
        }
        Error::UnknownVariable(v) => perr(pos, format!("unknown variable `{v}`")),
        other => other,
    })
}

#[derive(Default)]
struct Fields<'a> {
    version: Option<&'a [Sexp]>,
    vars: Option<&'a [Sexp]>,
    mode: Option<&'a [Sexp]>,
    target: Option<&'a [Sexp]>,
    pow: Option<&'a [Sexp]>,
    scale: Option<&'a [Sexp]>,
    gens: Option<&'a [Sexp]>,
    cofactors: Option<&'a [Sexp]>,
    witnesses: Option<&'a [Sexp]>,
    note: Option<&'a [Sexp]>,
}

fn single<'a>(args: &'a [Sexp], head: &str, at: Pos) -> Result<&'a Sexp> {
    match args {
        [one] => Ok(one),
        _ => Err(perr(at, format!("`{head}` takes exactly one value"))),
    }
}

fn from_sexp<'f>(form: &'f Sexp) -> Result<CertificateFile> {
    let Sexp::List(items, at) = form else {
        return Err(perr(form.pos(), "expected `(certificate ...)`"));
    };
    match items.first() {
        Some(Sexp::Atom(h, _)) if h == "certificate" => {}
        _ => return Err(perr(*at, "expected `(certificate ...)`")),
    }
    let mut f = Fields::default();
    for item in &items[1..] {
        let Sexp::List(parts, p) = item else {
            return Err(perr(item.pos(), "expected a `(field ...)` list"));
        };
        let Some(head) = parts.first() else {
            return Err(perr(*p, "empty field"));
        };
        let head = atom(head)?;
        let slot = match head {
            "version" => &mut f.version,
            "vars" => &mut f.vars,
            "mode" => &mut f.mode,
            "target" => &mut f.target,
            "pow" => &mut f.pow,
            "scale" => &mut f.scale,
            "gens" => &mut f.gens,
            "cofactors" => &mut f.cofactors,
            "witnesses" => &mut f.witnesses,
            "note" => &mut f.note,
            other => return Err(perr(*p, format!("unknown field `{other}`"))),
        };
        if slot.is_some() {
            return Err(perr(*p, format!("duplicate field `{head}`")));
        }
        *slot = Some(&parts[1..]);
    }
    let need = |v: Option<&'f [Sexp]>, name: &str| v.ok_or_else(|| perr(*at, format!("missing field `{name}`")));
    // the version is checked before anything else is interpreted
    let version = atom(single(need(f.version, "version")?, "version", *at)?)?;
    if version != FORMAT_VERSION.to_string() {
        return Err(Error::VersionMismatch(version.to_string()));
    }
    let vars: Vec<&str> = need(f.vars, "vars")?.iter().map(atom).collect::<Result<_>>()?;
    let ring = certificate_ring(vars.iter().copied()).map_err(|e| perr(*at, e.to_string()))?;
    let mode_s = single(need(f.mode, "mode")?, "mode", *at)?;
    let mode = Mode::from_tag(atom(mode_s)?).ok_or_else(|| perr(mode_s.pos(), "mode must be R or Z"))?;
    let (t, tp) = string(single(need(f.target, "target")?, "target", *at)?)?;
    let target = poly_at(t, tp, &ring)?;
    let pow_s = single(need(f.pow, "pow")?, "pow", *at)?;
    let power: u32 = atom(pow_s)?
        .parse()
        .map_err(|_| perr(pow_s.pos(), "pow must be a non-negative integer"))?;
    let scale_s = single(need(f.scale, "scale")?, "scale", *at)?;
    let scale: BigInt = atom(scale_s)?
        .parse()
        .map_err(|_| perr(scale_s.pos(), "scale must be an integer"))?;
    let polys = |xs: &[Sexp]| -> Result<Vec<Polynomial>> {
        xs.iter()
            .map(|x| {
                let (s, p) = string(x)?;
                poly_at(s, p, &ring)
            })
            .collect()
    };
    let generators = polys(need(f.gens, "gens")?)?;
    let cofactors = polys(need(f.cofactors, "cofactors")?)?;
    let mut witnesses = Vec::new();
    for w in f.witnesses.unwrap_or(&[]) {
        let Sexp::List(kv, p) = w else {
            return Err(perr(w.pos(), "expected `(name \"poly\")`"));
        };
        let [name, value] = kv.as_slice() else {
            return Err(perr(*p, "expected `(name \"poly\")`"));
        };
        let (s, sp) = string(value)?;
        witnesses.push((atom(name)?.to_string(), poly_at(s, sp, &ring)?));
    }
    let note = match f.note {
        None => None,
        Some(args) => Some(string(single(args, "note", *at)?)?.0.to_string()),
    };
    Ok(CertificateFile {
        mode,
        target,
        power,
        scale,
        generators,
        cofactors,
        witnesses,
        note,
    })
}
