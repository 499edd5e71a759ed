use super::*;
use crate::poly::{dot, parse_polynomial, MonomialOrder, Polynomial, Ring, RingRef};

fn ring(vars: &[&str], ord: MonomialOrder) -> RingRef {
    Ring::new(vars.iter().copied(), ord).unwrap()
}

fn ps(r: &RingRef, src: &[&str]) -> Vec<Polynomial> {
    src.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
}

fn assert_groebner(gb: &GroebnerBasis) {
    let basis = gb.polynomials();
    let traced: Vec<TracedPolynomial> = gb.traced().unwrap();
    for t in &traced {
        assert!(t.verify(gb.generators()).unwrap(), "trace soundness");
    }
    for i in 0..traced.len() {
        for j in i + 1..traced.len() {
            let s = s_polynomial(&traced[i], &traced[j]).unwrap();
            let r = reduce(&s.value, &basis).unwrap();
            assert!(r.remainder.is_zero(), "S({i},{j}) does not reduce to 0");
        }
    }
    for (i, a) in basis.iter().enumerate() {
        assert!(a.is_monic());
        for (j, b) in basis.iter().enumerate() {
            if i != j {
                assert!(!b.leading_monomial().unwrap().divides(a.leading_monomial().unwrap()));
            }
        }
    }
}

#[test]
fn worked_example_basis_is_reduced() {
    let r = ring(&["x", "y"], MonomialOrder::GrevLex);
    let gb = buchberger(&ps(&r, &["x^2+x*y", "y^2+x*y"])).unwrap();
    assert_groebner(&gb);
    // the reduced basis is unique: x^2 - y^2, x*y + y^2
    assert_eq!(gb.polynomials(), ps(&r, &["x^2 - y^2", "x*y + y^2"]));
}

#[test]
fn single_generator_becomes_monic() {
    let r = ring(&["x", "y"], MonomialOrder::GrevLex);
    let gb = buchberger(&ps(&r, &["3*x^2 - 6*y"])).unwrap();
    assert_eq!(gb.polynomials(), ps(&r, &["x^2 - 2*y"]));
    let t = gb.traced().unwrap();
    assert_eq!(t[0].trace, ps(&r, &["1/3"]));
}

#[test]
fn unit_ideal() {
    let r = ring(&["x"], MonomialOrder::GrevLex);
    let gb = buchberger(&ps(&r, &["1"])).unwrap();
    assert!(gb.is_unit_ideal());
    let gb = buchberger(&ps(&r, &["x", "1 - x"])).unwrap();
    assert!(gb.is_unit_ideal());
    assert_groebner(&gb);
}

#[test]
fn empty_and_zero_systems_are_errors() {
    let r = ring(&["x"], MonomialOrder::GrevLex);
    assert!(matches!(buchberger(&[]), Err(crate::Error::EmptySystem)));
    assert!(matches!(buchberger(&ps(&r, &["0", "0"])), Err(crate::Error::EmptySystem)));
}

#[test]
fn zeros_and_duplicates_tolerated() {
    let r = ring(&["x", "y"], MonomialOrder::Lex);
    let gens = ps(&r, &["0", "x*y - 1", "2*x*y - 2", "y^2 - x"]);
    let gb = buchberger(&gens).unwrap();
    assert_groebner(&gb);
    let t = gb.traced().unwrap();
    assert!(t.iter().all(|t| t.trace.len() == 4 && t.trace[0].is_zero()));
}

#[test]
fn early_stop_reproduces_worked_example() {
    let r = ring(&["x", "y"], MonomialOrder::GrevLex);
    let gens = ps(&r, &["x^2+x*y", "y^2+x*y"]);
    let target = parse_polynomial("x+y", &r).unwrap();
    match incremental_membership_completion(&target, &gens, 2).unwrap() {
        CompletionOutcome::EarlyMembership { power, cofactors } => {
            assert_eq!(power, 2);
            assert_eq!(cofactors, ps(&r, &["1", "1"]));
        }
        CompletionOutcome::Basis(_) => panic!("expected membership"),
    }
}

#[test]
fn generator_target_is_immediate() {
    let r = ring(&["x", "y"], MonomialOrder::GrevLex);
    let gens = ps(&r, &["x^3 - y", "x*y - 1"]);
    match incremental_membership_completion(&gens[1], &gens, 4).unwrap() {
        CompletionOutcome::EarlyMembership { power, cofactors } => {
            assert_eq!(power, 1);
            assert_eq!(dot(&r, &cofactors, &gens).unwrap(), gens[1]);
        }
        CompletionOutcome::Basis(_) => panic!("expected membership"),
    }
}

#[test]
fn non_member_finishes_with_basis() {
    let r = ring(&["x"], MonomialOrder::GrevLex);
    let gens = ps(&r, &["x"]);
    let one = Polynomial::one(&r);
    match incremental_membership_completion(&one, &gens, 3).unwrap() {
        CompletionOutcome::Basis(gb) => {
            assert_eq!(gb.normal_form(&one).unwrap(), one);
            assert!(gb.membership_cofactors(&one).unwrap().is_none());
        }
        CompletionOutcome::EarlyMembership { .. } => panic!("1 is not in (x)"),
    }
}

#[test]
fn symmetric_functions_radical_power() {
    let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex);
    let gens = ps(&r, &["x+y+z", "x*y+y*z+z*x", "x*y*z"]);
    let x = parse_polynomial("x", &r).unwrap();
    match incremental_membership_completion(&x, &gens, 6).unwrap() {
        CompletionOutcome::EarlyMembership { power, cofactors } => {
            assert_eq!(power, 3);
            assert_eq!(dot(&r, &cofactors, &gens).unwrap(), x.pow(3).unwrap());
        }
        CompletionOutcome::Basis(_) => panic!("x^3 is in the ideal"),
    }
}

#[test]
fn remainder_independent_of_basis_permutation() {
    let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex);
    let gb = buchberger(&ps(&r, &["x^2 + y*z - 1", "y^2 - x*z", "z^3 + x - y"])).unwrap();
    let mut basis = gb.polynomials();
    let f = parse_polynomial("x^3*y + z^4 - 7*x*y*z + 2", &r).unwrap();
    let r0 = reduce(&f, &basis).unwrap().remainder;
    basis.reverse();
    let r1 = reduce(&f, &basis).unwrap().remainder;
    basis.rotate_left(1);
    let r2 = reduce(&f, &basis).unwrap().remainder;
    assert_eq!(r0, r1);
    assert_eq!(r0, r2);
}

#[test]
fn max_power_zero_rejected() {
    let r = ring(&["x"], MonomialOrder::GrevLex);
    let gens = ps(&r, &["x"]);
    assert!(incremental_membership_completion(&gens[0], &gens, 0).is_err());
}

mod props {
    use super::*;
    use crate::poly::{Monomial, Rational};
    use proptest::prelude::*;

    fn arb_poly(r: RingRef, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (-5i64..=5, prop::collection::vec(0..=max_deg, r.nvars())),
            1..=max_terms,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .filter(|(_, e)| e.iter().sum::<u32>() <= max_deg)
                    .map(|(c, e)| (Rational::from_integer(c.into()), Monomial::from_exponents(e))),
            )
        })
    }

    fn grevlex3() -> RingRef {
        ring(&["x", "y", "z"], MonomialOrder::GrevLex)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn division_contract(
            f in arb_poly(grevlex3(), 4, 6),
            ds in prop::collection::vec(arb_poly(grevlex3(), 2, 3), 1..4),
        ) {
            let ds: Vec<Polynomial> = ds.into_iter().filter(|d| !d.is_zero()).collect();
            prop_assume!(!ds.is_empty());
            let res = reduce(&f, &ds).unwrap();
            let back = dot(f.ring(), &res.quotients, &ds).unwrap() + &res.remainder;
            prop_assert_eq!(back, f);
            for t in res.remainder.terms() {
                for d in &ds {
                    prop_assert!(!d.leading_monomial().unwrap().divides(&t.mono));
                }
            }
        }

        #[test]
        fn groebner_property_and_traces(
            gens in prop::collection::vec(arb_poly(grevlex3(), 2, 3), 1..4),
        ) {
            prop_assume!(gens.iter().any(|g| !g.is_zero()));
            let gb = buchberger(&gens).unwrap();
            assert_groebner(&gb);
        }

        #[test]
        fn remainder_uniqueness(
            gens in prop::collection::vec(arb_poly(grevlex3(), 2, 3), 1..4),
            f in arb_poly(grevlex3(), 3, 5),
        ) {
            prop_assume!(gens.iter().any(|g| !g.is_zero()));
            let gb = buchberger(&gens).unwrap();
            let mut basis = gb.polynomials();
            let r0 = reduce(&f, &basis).unwrap().remainder;
            basis.reverse();
            let r1 = reduce(&f, &basis).unwrap().remainder;
            prop_assert_eq!(r0, r1);
        }

        #[test]
        fn early_stop_on_constructed_members(
            gens in prop::collection::vec(arb_poly(grevlex3(), 2, 3), 2..4),
            qs in prop::collection::vec(arb_poly(grevlex3(), 1, 2), 3),
        ) {
            prop_assume!(gens.iter().any(|g| !g.is_zero()));
            let r = grevlex3();
            let target = dot(&r, &qs[..gens.len()], &gens).unwrap();
            prop_assume!(!target.is_zero());
            match incremental_membership_completion(&target, &gens, 1).unwrap() {
                CompletionOutcome::EarlyMembership { power, cofactors } => {
                    prop_assert_eq!(power, 1);
                    prop_assert_eq!(dot(&r, &cofactors, &gens).unwrap(), target);
                }
                CompletionOutcome::Basis(_) => prop_assert!(false, "member not detected"),
            }
        }
    }
}
