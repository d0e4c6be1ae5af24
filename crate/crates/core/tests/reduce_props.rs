mod common;

use std::collections::HashMap;

use common::{fundamental, poly, word};
use proptest::prelude::*;
use skeinchar::charring::handlebody_member;
use skeinchar::reduce::{psi_normal_form, psi_normal_form_traced, reduce_to_t, reduce_to_t_traced, triple_identity};
use skeinchar::repeval::{eval_poly, verify_identity, Mode, Representation, DEFAULT_SIZE_BOUND};
use skeinchar::{TracePolynomial, Word};

/// A nonzero residue must still be an SL2 trace identity, and over three
/// generators it must lie in the handlebody ideal.
fn check_residue(r: &TracePolynomial) -> Result<(), TestCaseError> {
    if r.is_zero() {
        return Ok(());
    }
    prop_assert!(r.max_index() >= 3, "no relations exist on two generators: {}", r);
    prop_assert!(verify_identity(r, 10, 3, Mode::Sl2).unwrap().passed(), "{}", r);
    if r.max_index() == 3 {
        prop_assert!(handlebody_member(r).unwrap(), "{}", r);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn evaluation_commutes_with_normal_form(p in poly(4, 8, 4), seed in any::<u64>()) {
        let q = psi_normal_form(&p);
        prop_assert!(q.is_in_t0());
        for trial in 0..20 {
            let rep = Representation::seeded(seed, trial, 4, Mode::Sl2, DEFAULT_SIZE_BOUND);
            prop_assert_eq!(eval_poly(&rep, &p).unwrap(), eval_poly(&rep, &q).unwrap(), "trial {}", trial);
        }
    }

    #[test]
    fn normal_form_is_idempotent(p in poly(4, 8, 4)) {
        let q = psi_normal_form(&p);
        prop_assert_eq!(psi_normal_form(&q), q.clone());
        let t = reduce_to_t(&p);
        prop_assert!(t.is_in_t());
        prop_assert_eq!(reduce_to_t(&t), t);
    }

    #[test]
    fn traces_are_deterministic_and_replay(p in poly(4, 6, 3)) {
        let a = psi_normal_form_traced(&p);
        prop_assert_eq!(&a, &psi_normal_form_traced(&p));
        prop_assert_eq!(a.replay(), a.output.clone());
        let b = reduce_to_t_traced(&p);
        prop_assert_eq!(&b, &reduce_to_t_traced(&p));
        prop_assert_eq!(b.replay(), b.output);
    }

    #[test]
    fn fundamental_identity_vanishes_on_two_generators(w1 in word(2, 6), w2 in word(2, 6)) {
        prop_assert!(psi_normal_form(&fundamental(&w1, &w2)).is_zero());
    }

    #[test]
    fn fundamental_identity_residue_is_a_relation(w1 in word(4, 6), w2 in word(4, 6)) {
        check_residue(&psi_normal_form(&fundamental(&w1, &w2)))?;
    }

    #[test]
    fn three_letter_identity_stays_a_relation_under_substitution(
        images in prop::collection::vec(word(3, 3), 3),
    ) {
        let sub: HashMap<u32, Word> = (1..=3).zip(images).collect();
        let base = triple_identity(&Word::gen(1), &Word::gen(2), &Word::gen(3));
        let p = base.substitute_generators(&sub);
        if p.max_index() <= 2 {
            prop_assert!(psi_normal_form(&p).is_zero());
        }
        check_residue(&psi_normal_form(&p))?;
    }
}
