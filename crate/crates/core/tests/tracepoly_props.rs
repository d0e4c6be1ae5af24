mod common;

use std::collections::HashMap;

use common::{poly, word};
use proptest::prelude::*;
use skeinchar::{TracePolynomial, Word};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative(p in poly(3, 4, 3), q in poly(3, 4, 3), r in poly(3, 4, 3)) {
        prop_assert_eq!((&p * &q) * r.clone(), &p * &(&q * &r));
    }

    #[test]
    fn multiplication_distributes(p in poly(3, 4, 3), q in poly(3, 4, 3), r in poly(3, 4, 3)) {
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn ring_identities(p in poly(3, 4, 4), q in poly(3, 4, 4)) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &TracePolynomial::one(), p.clone());
        prop_assert!((&p * &TracePolynomial::zero()).is_zero());
    }

    #[test]
    fn substitution_is_multiplicative(
        p in poly(3, 3, 3),
        q in poly(3, 3, 3),
        images in prop::collection::vec(word(3, 3), 3),
    ) {
        let sub: HashMap<u32, Word> = (1..=3).zip(images).collect();
        prop_assert_eq!(
            (&p * &q).substitute_generators(&sub),
            &p.substitute_generators(&sub) * &q.substitute_generators(&sub)
        );
    }

    #[test]
    fn text_round_trips(p in poly(4, 6, 5)) {
        let back: TracePolynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn coordinate_text_round_trips(p in poly(4, 6, 4)) {
        let q = skeinchar::reduce::reduce_to_t(&p);
        let back: TracePolynomial = q.to_string().parse().unwrap();
        prop_assert_eq!(back, q);
    }
}
