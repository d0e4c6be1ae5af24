mod common;

use common::{parse, word};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skeinchar::cli::suites::{centered_trace_identity, determinant_trace_identity, random_quad, trace_matrix_identity};
use skeinchar::repeval::{
    det4, eval_word, jstar_const, verify_identity, Matrix4, Mode, Representation, DEFAULT_SIZE_BOUND,
};
use skeinchar::{TracePolynomial, Word};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_is_a_class_function(w in word(4, 8), g in word(4, 8), seed in any::<u64>()) {
        let rep = Representation::seeded(seed, 0, 4, Mode::Sl2, DEFAULT_SIZE_BOUND);
        let t = eval_word(&rep, &w).unwrap().trace();
        prop_assert_eq!(&eval_word(&rep, &w.inverse()).unwrap().trace(), &t);
        let conj = g.concat(&w).concat(&g.inverse());
        prop_assert_eq!(eval_word(&rep, &conj).unwrap().trace(), t);
    }

    #[test]
    fn words_land_in_sl2(w in word(4, 8), seed in any::<u64>()) {
        let rep = Representation::seeded(seed, 1, 4, Mode::Sl2, DEFAULT_SIZE_BOUND);
        prop_assert!(eval_word(&rep, &w).unwrap().det().is_one());
    }

    #[test]
    fn four_by_four_trace_factorizations(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_quad(&mut rng), random_quad(&mut rng));
        prop_assert!(trace_matrix_identity(&a, &b));
        prop_assert!(centered_trace_identity(&a, &b));
        prop_assert!(determinant_trace_identity(&a));
    }

    #[test]
    fn representation_text_round_trips(seed in any::<u64>()) {
        let rep = Representation::seeded(seed, 2, 3, Mode::Any, DEFAULT_SIZE_BOUND);
        let back: Representation = rep.to_string().parse().unwrap();
        prop_assert_eq!(back.matrices(), rep.matrices());
    }
}

#[test]
fn j_star_complement_is_singular() {
    assert!(det4(&Matrix4::identity().sub(&jstar_const())).is_zero());
}

#[test]
fn diagonal_specialization_differences_are_identities() {
    for m in 1..=4 {
        let a = Word::gen(m);
        let diff = TracePolynomial::class_var(&a.concat(&a)) + TracePolynomial::class_var(&Word::identity())
            - TracePolynomial::class_var(&a) * TracePolynomial::class_var(&a.inverse());
        assert!(verify_identity(&diff, 30, 2, Mode::Sl2).unwrap().passed(), "m = {m}");
    }
    let unit = TracePolynomial::class_var(&Word::identity()) - TracePolynomial::int(2);
    assert!(verify_identity(&unit, 30, 2, Mode::Sl2).unwrap().passed());
    assert!(!verify_identity(&parse("(a1) - 2"), 30, 2, Mode::Sl2).unwrap().passed());
}

#[test]
fn verification_is_reproducible() {
    let p = parse("(a1)(a2) + (a1 a2)");
    let a = verify_identity(&p, 10, 9, Mode::Any).unwrap();
    let b = verify_identity(&p, 10, 9, Mode::Any).unwrap();
    let (ca, cb) = (a.counterexample.unwrap(), b.counterexample.unwrap());
    assert_eq!(ca.trial, cb.trial);
    assert_eq!(ca.value, cb.value);
    assert_eq!(ca.representation.matrices(), cb.representation.matrices());
}
