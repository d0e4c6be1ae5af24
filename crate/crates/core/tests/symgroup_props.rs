use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skeinchar::charring::handlebody_member;
use skeinchar::reduce::psi_normal_form;
use skeinchar::repeval::{verify_identity, Mode};
use skeinchar::symgroup::{
    column_stabilizer, procesi_generators, row_stabilizer, young_symmetrizer, GroupAlgebraElement, Permutation, Tableau,
};

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn partition() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=4, 1..=4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stabilizer_sizes(shape in partition(), seed in any::<u64>()) {
        let m: usize = shape.iter().sum();
        let mut letters: Vec<u32> = (1..=m as u32).collect();
        letters.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut rest = letters.as_slice();
        let rows: Vec<Vec<u32>> = shape.iter().map(|&k| {
            let (row, tail) = rest.split_at(k);
            rest = tail;
            row.to_vec()
        }).collect();
        let y = Tableau::new(rows).unwrap();
        let p: usize = y.shape().iter().map(|&k| factorial(k)).product();
        let q: usize = y.columns().iter().map(|c| factorial(c.len())).product();
        prop_assert_eq!(row_stabilizer(&y).len(), p);
        prop_assert_eq!(column_stabilizer(&y).len(), q);
    }

    #[test]
    fn permutation_group_laws(seed in any::<u64>()) {
        let letters = [1u32, 2, 3, 4, 5];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm = || {
            let mut img = letters.to_vec();
            img.shuffle(&mut rng);
            Permutation::from_cycles(&letters, &[&img[..3], ]).unwrap()
        };
        let (s, t, u) = (perm(), perm(), perm());
        prop_assert_eq!(s.mul(&t).unwrap().mul(&u).unwrap(), s.mul(&t.mul(&u).unwrap()).unwrap());
        prop_assert!(s.mul(&s.inverse()).unwrap().is_identity());
        prop_assert_eq!(s.mul(&t).unwrap().sgn(), s.sgn() * t.sgn());
        for a in letters {
            prop_assert_eq!(s.mul(&t).unwrap().apply(a), s.apply(t.apply(a)));
        }
    }

    #[test]
    fn left_multiples_of_three_row_symmetrizer_reduce_into_ideal(seed in any::<u64>()) {
        let letters = [1u32, 2, 3];
        let y = Tableau::canonical(&[1, 1, 1], &letters).unwrap();
        let s = young_symmetrizer(&y);
        let mut img = letters.to_vec();
        img.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let tau = Permutation::from_cycles(&letters, &[&img[..2]]).unwrap();
        let p = GroupAlgebraElement::from_perm(tau).mul(&s).unwrap().to_trace_poly();
        prop_assert!(handlebody_member(&psi_normal_form(&p)).unwrap());
    }
}

#[test]
fn procesi_generators_vanish_and_reduce_into_ideal() {
    for m in 3..=5usize {
        let letters: Vec<u32> = (1..=m as u32).collect();
        for (y, s) in procesi_generators(&letters, false).unwrap() {
            let p = s.to_trace_poly();
            assert!(verify_identity(&p, 20, 11, Mode::Any).unwrap().passed(), "{y}");
            if m <= 4 {
                assert!(handlebody_member(&psi_normal_form(&p)).unwrap(), "{y}");
            }
        }
    }
}

#[test]
fn two_row_symmetrizer_is_not_an_identity() {
    let y = Tableau::new(vec![vec![1, 2]]).unwrap();
    let p = young_symmetrizer(&y).to_trace_poly();
    assert_eq!(p, "(a1)(a2) + (a1 a2)".parse().unwrap());
    assert!(!verify_identity(&p, 20, 5, Mode::Any).unwrap().passed());
}

#[test]
fn generator_cap_is_enforced() {
    let letters: Vec<u32> = (1..=6).collect();
    assert!(procesi_generators(&letters, false).is_err());
}
