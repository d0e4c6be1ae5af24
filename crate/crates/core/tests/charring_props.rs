mod common;

use std::collections::BTreeMap;

use common::{parse, poly};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use skeinchar::charring::{
    buchberger, buchberger_with, gm_generators, handlebody_ideal, relator_polynomials, Ideal, Limits, MonomialOrder,
    Presentation,
};
use skeinchar::reduce::psi_normal_form;
use skeinchar::repeval::{eval_poly, eval_word, verify_identity, Matrix2, Mode, Representation, DEFAULT_SIZE_BOUND};
use skeinchar::tracepoly::Coeff;
use skeinchar::TracePolynomial;

fn rational() -> impl Strategy<Value = Coeff> {
    (-12i64..=12, 1i64..=5)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Coeff::new(BigInt::from(n), BigInt::from(d)))
}

fn diag(s: &Coeff) -> Matrix2 {
    Matrix2::new(s.clone(), Coeff::zero(), Coeff::zero(), s.recip())
}

fn sl2(mats: Vec<Matrix2>) -> Representation {
    let m: BTreeMap<u32, Matrix2> = (1..).zip(mats).collect();
    Representation::new(Mode::Sl2, m).unwrap()
}

fn assert_relators_vanish(pres: &Presentation, rep: &Representation) -> Result<(), TestCaseError> {
    for w in pres.relators() {
        prop_assert!(eval_word(rep, w).unwrap().is_identity(), "relator {} not satisfied", w);
    }
    for g in relator_polynomials(pres) {
        prop_assert!(eval_poly(rep, &g).unwrap().is_zero(), "{}", g);
    }
    Ok(())
}

/// Polynomials in `t1, t2, t12` of degree at most two.
fn coordinate_poly() -> impl Strategy<Value = TracePolynomial> {
    prop::collection::vec((-2i64..=2, 0u32..=2, 0u32..=1, 0u32..=1), 1..=4).prop_map(|ts| {
        let mut p = TracePolynomial::zero();
        for (c, a, b, z) in ts {
            p += TracePolynomial::int(c)
                * TracePolynomial::t(&[1]).pow(a)
                * TracePolynomial::t(&[2]).pow(b)
                * TracePolynomial::t(&[1, 2]).pow(z);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn relators_vanish_on_finite_cyclic_representations(s in rational()) {
        let pres: Presentation = "generators: 2\nrelator: a1 a1\nrelator: a2 a2 a2".parse().unwrap();
        let minus_one = Matrix2::from_ints(-1, 0, 0, -1);
        let order_three = Matrix2::from_ints(0, -1, 1, -1);
        let conj = Matrix2::new(s.clone(), Coeff::from_integer(1.into()), Coeff::zero(), s.recip());
        let b = conj.mul(&order_three).mul(&conj.inverse().unwrap());
        assert_relators_vanish(&pres, &sl2(vec![minus_one, b]))?;
    }

    #[test]
    fn relators_vanish_on_abelian_representations(s in rational(), u in rational()) {
        let pres: Presentation = "generators: 2\nrelator: a1 a2 a1^-1 a2^-1".parse().unwrap();
        assert_relators_vanish(&pres, &sl2(vec![diag(&s), diag(&u)]))?;
    }

    #[test]
    fn relators_vanish_on_trefoil_representations(s in rational()) {
        // b is chosen so that tr(ab) = 1, which forces aba = bab
        let pres: Presentation = "generators: 2\nrelator: a1 a2 a1 a2^-1 a1^-1 a2^-1".parse().unwrap();
        let one = Coeff::from_integer(1.into());
        let c = &one - &s * &s - (&s * &s).recip();
        let a = Matrix2::new(s.clone(), one, Coeff::zero(), s.recip());
        let b = Matrix2::new(s.clone(), Coeff::zero(), c, s.recip());
        assert_relators_vanish(&pres, &sl2(vec![a, b]))?;
    }

    #[test]
    fn membership_agrees_across_orders(
        g1 in coordinate_poly(),
        g2 in coordinate_poly(),
        c1 in coordinate_poly(),
        c2 in coordinate_poly(),
        r in coordinate_poly(),
    ) {
        let ideal = Ideal::new(2, vec![g1.clone(), g2.clone()]).unwrap();
        let limits = Limits { budget: 200_000, cancel: None };
        let grevlex = buchberger_with(&ideal, MonomialOrder::Grevlex, &limits);
        let lex = buchberger_with(&ideal, MonomialOrder::Lex, &limits);
        let (Ok(grevlex), Ok(lex)) = (grevlex, lex) else {
            return Err(TestCaseError::reject("budget exhausted"));
        };
        prop_assert!(grevlex.check());
        prop_assert!(lex.check());
        let inside = &(&c1 * &g1) + &(&c2 * &g2);
        prop_assert!(grevlex.member(&inside).unwrap());
        prop_assert!(lex.member(&inside).unwrap());
        prop_assert_eq!(grevlex.member(&r).unwrap(), lex.member(&r).unwrap());
        prop_assert_eq!(grevlex.is_unit(), lex.is_unit());
    }

    #[test]
    fn handlebody_normal_form_is_stable(p in poly(3, 6, 3), seed in any::<u64>()) {
        let g = buchberger(&handlebody_ideal(3), MonomialOrder::Grevlex).unwrap();
        let q = psi_normal_form(&p);
        let r = g.normal_form_mod(&q).unwrap();
        prop_assert_eq!(&g.normal_form_mod(&r).unwrap(), &r);
        for trial in 0..5 {
            let rep = Representation::seeded(seed, trial, 3, Mode::Sl2, DEFAULT_SIZE_BOUND);
            prop_assert_eq!(eval_poly(&rep, &p).unwrap(), eval_poly(&rep, &q).unwrap());
            prop_assert_eq!(eval_poly(&rep, &q).unwrap(), eval_poly(&rep, &r).unwrap());
        }
    }
}

#[test]
fn handlebody_generators_vanish_on_sl2() {
    for n in 3..=4 {
        for g in gm_generators(n) {
            assert!(verify_identity(&g, 50, 4, Mode::Sl2).unwrap().passed(), "{g}");
        }
    }
}

#[test]
fn groebner_postcondition_holds() {
    let pres: Presentation = "generators: 2\nrelator: a1 a2 a1 a2^-1 a1^-1 a2^-1".parse().unwrap();
    let ideal = skeinchar::charring::manifold_ideal(&pres);
    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
        let g = buchberger(&ideal, order).unwrap();
        assert!(g.check());
        for gen in &ideal.generators {
            assert!(g.member(gen).unwrap());
        }
    }
}

#[test]
fn foreign_variables_are_rejected() {
    assert!(Ideal::new(2, vec![parse("t3 - 1")]).is_err());
    assert!(Ideal::new(4, vec![parse("t1234")]).is_err());
}
