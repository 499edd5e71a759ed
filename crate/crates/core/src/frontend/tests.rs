use super::*;
use crate::certificate::{check, Verdict};
use crate::poly::{parse_polynomial, Ring};
use proptest::prelude::*;

fn ring(vars: &[&str]) -> RingRef {
    Ring::new(vars.iter().copied(), MonomialOrder::GrevLex).unwrap()
}

fn eq(r: &RingRef, l: &str, rel: Polarity, rhs: &str) -> Equation {
    Equation::with_sources(
        parse_polynomial(l, r).unwrap(),
        parse_polynomial(rhs, r).unwrap(),
        rel,
        l,
        rhs,
    )
    .unwrap()
}

fn p(r: &RingRef, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

fn goal(text: &str) -> Outcome<ProvedGoal> {
    prove_goal(&parse_goal(text).unwrap(), &ProveOptions::default()).unwrap()
}

fn assert_certificates_valid(g: &ProvedGoal) {
    for c in g.certificates().unwrap() {
        assert_eq!(check(&c).unwrap(), Verdict::Valid);
    }
}

#[test]
fn negated_conclusion_becomes_hypothesis() {
    let r = ring(&["x", "y"]);
    let s = ProblemStatement {
        mode: Mode::Real,
        ring: r.clone(),
        hypotheses: vec![eq(&r, "x*y", Polarity::Equal, "1")],
        conclusion: eq(&r, "x", Polarity::NotEqual, "0"),
    };
    let t = transform_conclusion_negation(&s).unwrap();
    let residuals: Vec<&Polynomial> = t.hypotheses.iter().map(Equation::residual).collect();
    assert_eq!(residuals, vec![&p(&r, "x*y - 1"), &p(&r, "x")]);
    assert!(t.conclusion.residual().is_one());
    assert!(transform_conclusion_negation(&t).is_err());

    let s = ProblemStatement {
        conclusion: eq(&r, "x^2", Polarity::NotEqual, "y"),
        ..s
    };
    let t = transform_conclusion_negation(&s).unwrap();
    assert_eq!(t.hypotheses[1].residual(), &p(&r, "x^2 - y"));
}

#[test]
fn negated_hypotheses_get_fresh_inverses() {
    let r = ring(&["x"]);
    let s = ProblemStatement {
        mode: Mode::Real,
        ring: r.clone(),
        hypotheses: vec![eq(&r, "x^2", Polarity::NotEqual, "1")],
        conclusion: eq(&r, "x", Polarity::NotEqual, "1"),
    };
    let t = normalize_statement(&s).unwrap();
    assert_eq!(t.ring.vars(), ["x", "t"]);
    let rt = &t.ring;
    assert_eq!(t.hypotheses[0].residual(), &p(rt, "t*(x^2 - 1) - 1"));
    assert_eq!(t.hypotheses[0].residual_source(), "t*(x^2 - 1) - 1");
    assert_eq!(t.hypotheses[1].residual(), &p(rt, "x - 1"));
    assert!(t.conclusion.residual().is_one());

    let plain = ProblemStatement {
        hypotheses: vec![eq(&r, "x", Polarity::Equal, "0")],
        ..s.clone()
    };
    assert_eq!(transform_hypothesis_negations(&plain).unwrap(), plain);

    let r2 = ring(&["x", "t"]);
    let two = ProblemStatement {
        mode: Mode::Real,
        ring: r2.clone(),
        hypotheses: vec![eq(&r2, "x", Polarity::NotEqual, "0"), eq(&r2, "t", Polarity::NotEqual, "0")],
        conclusion: eq(&r2, "x", Polarity::Equal, "x"),
    };
    let t = transform_hypothesis_negations(&two).unwrap();
    assert_eq!(t.ring.vars(), ["x", "t", "t_1", "t_2"]);

    let z = ProblemStatement { mode: Mode::Integer, ..s };
    assert!(matches!(transform_hypothesis_negations(&z), Err(Error::UnsupportedGoal(_))));
}

#[test]
fn worked_goal_reproduces_identity() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../goals/worked.goal")).unwrap();
    let g = goal(&text).found().unwrap();
    let id = &g.identities[0];
    assert_eq!(id.certificate.power, 2);
    assert_eq!(id.certificate.scale, BigInt::one());
    let r = id.target.ring();
    assert_eq!(id.certificate.cofactors, vec![p(r, "1"), p(r, "1")]);
    assert_eq!(
        g.rendered_identity(),
        "1 * (x + y)^2 = 1 * (x^2 + x*y) + 1 * (y^2 + x*y)"
    );
    assert_certificates_valid(&g);
}

#[test]
fn symmetric_goal_in_integer_mode() {
    let g = goal(
        "vars x y z\nmode Z\nhyp x+y+z = 0\nhyp x*y+y*z+z*x = 0\nhyp x*y*z = 0\nconcl x = 0\n",
    )
    .found()
    .unwrap();
    let c = &g.identities[0].certificate;
    assert!(c.power <= 3);
    assert!(c.cofactors.iter().all(Polynomial::is_integral));
    assert_certificates_valid(&g);
}

#[test]
fn degenerate_and_empty_goals() {
    let g = goal("vars x\nconcl 0 = 0\n").found().unwrap();
    assert_eq!(g.identities[0].certificate.power, 1);
    assert_certificates_valid(&g);
    let g = goal("vars x\nhyp x = 1\nconcl x^2 = x^2\n").found().unwrap();
    assert_certificates_valid(&g);
    assert_eq!(goal("vars x\nconcl x = 0\n"), Outcome::NotFound(NotFound::NotInRadical));
    assert_eq!(
        goal("vars x y\nhyp x = 0\nconcl y = 0\n"),
        Outcome::NotFound(NotFound::NotInRadical)
    );
    let fast = ProveOptions {
        method: Method::FastPath,
        max_power: 2,
        ..ProveOptions::default()
    };
    let out = prove_goal(&parse_goal("vars x\nhyp x^3 = 0\nconcl x = 0\n").unwrap(), &fast).unwrap();
    assert_eq!(out, Outcome::NotFound(NotFound::PowerCap { max_power: 2 }));
}

#[test]
fn negation_goals() {
    let g = goal("vars x y\nhyp x*y = 1\nconcl x <> 0\n").found().unwrap();
    assert_certificates_valid(&g);
    let g = goal("vars x\nhyp x^2 <> 1\nconcl x <> 1\n").found().unwrap();
    let cert = &g.certificates().unwrap()[0];
    assert_eq!(cert.vars(), ["x", "t"]);
    assert!(cert.target.is_one());
    assert_certificates_valid(&g);
    assert!(matches!(
        prove_goal(&parse_goal("vars x\nmode Z\nhyp x <> 1\nconcl x <> 1\n").unwrap(), &ProveOptions::default()),
        Err(Error::UnsupportedGoal(_))
    ));
}

#[test]
fn euclid_unfolding() {
    let r = ring(&["a", "b", "c"]);
    let div = ArithPredicate::new(PredicateKind::Divides, vec![p(&r, "a"), p(&r, "b*c")]).unwrap();
    let cop = ArithPredicate::new(PredicateKind::Coprime, vec![p(&r, "a"), p(&r, "b")]).unwrap();
    let concl = ArithPredicate::new(PredicateKind::Divides, vec![p(&r, "a"), p(&r, "c")]).unwrap();
    let (gens, obs) = arith_reduce(&[div.clone(), cop.clone()], &concl).unwrap();
    let ext = gens[0].ring();
    assert_eq!(ext.vars(), ["a", "b", "c", "c_1", "u", "v"]);
    assert_eq!(gens, vec![p(ext, "b*c - c_1*a"), p(ext, "1 - u*a - v*b")]);
    assert_eq!(obs.len(), 1);
    assert_eq!(obs[0].target, p(ext, "c"));
    assert_eq!(obs[0].extra[0].1, p(ext, "a"));

    // c - (u*c + v*c_1)*a = c*(1 - u*a - v*b) + v*(b*c - c_1*a)
    let w = p(ext, "u*c + v*c_1");
    let lhs = p(ext, "c") - &w * &p(ext, "a");
    let rhs = p(ext, "c") * &gens[1] + p(ext, "v") * &gens[0];
    assert_eq!(lhs, rhs);

    let g = prove_arith_goal(&[div, cop], &concl, 6).unwrap().found().unwrap();
    assert!(verify_witnesses(&g).unwrap());
    assert_certificates_valid(&g);
}

#[test]
fn arithmetic_goal_files() {
    for name in ["euclid", "coprime_product", "squares_mod"] {
        let path = format!("{}/../../goals/{name}.goal", env!("CARGO_MANIFEST_DIR"));
        let g = goal(&std::fs::read_to_string(path).unwrap()).found().unwrap();
        assert!(verify_witnesses(&g).unwrap(), "{name}");
        assert!(!g.witnesses().is_empty());
        assert_certificates_valid(&g);
    }
}

#[test]
fn hand_derived_witness_identities() {
    // r = c*m and r = c_1*n and 1 = u*m + v*n give r = (u*c_1 + v*c)*m*n
    let r = ring(&["m", "n", "r", "c", "c_1", "u", "v"]);
    let lhs = p(&r, "r") - p(&r, "u*c_1 + v*c") * p(&r, "m*n");
    let rhs = p(&r, "r") * p(&r, "1 - u*m - v*n") + p(&r, "u*m") * p(&r, "r - c_1*n") + p(&r, "v*n") * p(&r, "r - c*m");
    assert_eq!(lhs, rhs);
    // x^2 - y^2 - (k - k_1)*n = (x^2 - a - k*n) - (y^2 - a - k_1*n)
    let r = ring(&["x", "y", "a", "n", "k", "k_1"]);
    let lhs = p(&r, "(x+y)*(x-y)") - p(&r, "k - k_1") * p(&r, "n");
    assert_eq!(lhs, p(&r, "x^2 - a - k*n") - p(&r, "y^2 - a - k_1*n"));
}

#[test]
fn trivial_arithmetic_goals() {
    let g = goal("vars a\nconcl divides(a, a)\n").found().unwrap();
    let w = g.witnesses();
    assert_eq!(w.len(), 1);
    assert!(w[0].1.is_one());
    assert_eq!(goal("vars x\nconcl coprime(x, x)\n"), Outcome::NotFound(NotFound::NotInIdeal));
}

#[test]
fn gcd_conclusion_has_three_obligations() {
    let g = goal("vars a b\nhyp coprime(a, b)\nconcl gcd(1, a, b)\n").found().unwrap();
    assert_eq!(g.identities.len(), 3);
    assert!(verify_witnesses(&g).unwrap());
    assert_certificates_valid(&g);
}

#[test]
fn scaled_witness_is_refused() {
    // over Q the obligation holds as a = (a/2)*2, never with scale 1
    let out = goal("vars a b\nhyp b = 2*a\nconcl divides(2, a)\n");
    match out {
        Outcome::NotFound(NotFound::WitnessExtractionFailed { power, scale }) => {
            assert_eq!(power, 1);
            assert!(scale != BigInt::one() && scale != -BigInt::one());
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn goal_file_errors() {
    let e = |t: &str| parse_goal(t).unwrap_err();
    assert_eq!(e("hyp x = 0\n"), Error::parse(1, 1, "`vars` must come before hypotheses"));
    assert_eq!(e("vars x\nhyp x = = 0\n"), Error::parse(2, 9, "more than one relation"));
    assert_eq!(e("vars x\nhyp x + w = 0\n"), Error::parse(2, 9, "unknown identifier `w`"));
    assert_eq!(
        e("vars a b\nhyp 2*divides(a, b) = 0\n"),
        Error::parse(2, 7, "predicate `divides` cannot appear inside an expression")
    );
    assert_eq!(
        e("vars a b\nhyp divides(a, coprime(a, b))\n"),
        Error::parse(2, 16, "predicate `coprime` cannot appear inside an expression")
    );
    assert_eq!(e("vars a b\nmode R\nconcl divides(a, b)\n"), Error::parse(2, 1, "predicates need mode Z"));
    assert!(matches!(e("vars a\nconcl divides(a)\n"), Error::Parse { line: 2, .. }));
    assert!(matches!(e("vars a\nfoo a\n"), Error::Parse { line: 2, column: 1, .. }));
    assert!(matches!(e("vars a\nconcl a = 0\nconcl a = 1\n"), Error::Parse { line: 3, .. }));
    assert!(matches!(e("vars 1a\n"), Error::Parse { line: 1, .. }));
    assert!(matches!(e("# only a comment\n"), Error::Parse { .. }));
}

#[test]
fn comments_and_defaults() {
    let g = parse_goal("  # header\nvars a, b   # names\nhyp a = b # trailing\n").unwrap();
    assert_eq!(g.mode, Mode::Real);
    assert_eq!(g.ring.vars(), ["a", "b"]);
    assert!(g.conclusion.is_none());
    assert_eq!(g.hypothesis_polynomials().unwrap(), vec![p(&g.ring, "a - b")]);
    let g = parse_goal("vars a\nhyp divides(a, 2)\n").unwrap();
    assert_eq!(g.mode, Mode::Integer);
    assert!(g.hypothesis_polynomials().is_err());
}

#[test]
fn lex_order_gives_valid_certificates() {
    let opts = ProveOptions {
        order: MonomialOrder::Lex,
        ..ProveOptions::default()
    };
    let g = prove_goal(
        &parse_goal("vars x y z\nhyp x+y+z = 0\nhyp x*y+y*z+z*x = 0\nhyp x*y*z = 0\nconcl y = 0\n").unwrap(),
        &opts,
    )
    .unwrap()
    .found()
    .unwrap();
    assert_certificates_valid(&g);
}

fn small_src() -> impl Strategy<Value = String> {
    let atom = prop_oneof![Just("x"), Just("y"), Just("t"), Just("2"), Just("x^2"), Just("x*y")];
    prop::collection::vec((atom, prop::bool::ANY), 1..4).prop_map(|v| {
        v.into_iter()
            .enumerate()
            .map(|(i, (a, plus))| match (i, plus) {
                (0, _) => a.to_string(),
                (_, true) => format!(" + {a}"),
                (_, false) => format!(" - {a}"),
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transforms_keep_user_names(
        hyps in prop::collection::vec((small_src(), prop::bool::ANY), 1..4),
        concl in small_src(),
    ) {
        let r = ring(&["x", "y", "t"]);
        let hypotheses: Vec<Equation> = hyps
            .iter()
            .map(|(s, ne)| eq(&r, s, if *ne { Polarity::NotEqual } else { Polarity::Equal }, "0"))
            .collect();
        let negs = hypotheses.iter().filter(|h| h.polarity == Polarity::NotEqual).count();
        let s = ProblemStatement {
            mode: Mode::Real,
            ring: r.clone(),
            hypotheses,
            conclusion: eq(&r, &concl, Polarity::NotEqual, "0"),
        };
        let t = normalize_statement(&s).unwrap();
        prop_assert_eq!(&t.ring.vars()[..3], r.vars());
        prop_assert_eq!(t.ring.nvars(), 3 + negs);
        let mut names = t.ring.vars().to_vec();
        names.sort();
        names.dedup();
        prop_assert_eq!(names.len(), t.ring.nvars());
        prop_assert_eq!(t.hypotheses.len(), s.hypotheses.len() + 1);
        if let Outcome::Found(g) = prove_equality_goal(&t, 3).unwrap() {
            let c = &g.certificates().unwrap()[0];
            prop_assert_eq!(&c.vars()[..3], r.vars());
            prop_assert!(check(c).unwrap().is_valid());
        }
    }
}
