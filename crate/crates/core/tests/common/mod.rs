#![allow(dead_code)]

use proptest::prelude::*;
use skeinchar::{Letter, TracePolynomial, Word};

pub fn word(n: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=n, any::<bool>()), 0..=max_len)
        .prop_map(|ls| Word::free_reduce(ls.into_iter().map(|(i, inv)| Letter::new(i, inv))))
}

pub fn nonempty_word(n: u32, max_len: usize) -> impl Strategy<Value = Word> {
    word(n, max_len).prop_filter("nonempty", |w| !w.is_empty())
}

/// Sums of up to `terms` products of up to three class variables.
pub fn poly(n: u32, max_len: usize, terms: usize) -> impl Strategy<Value = TracePolynomial> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(word(n, max_len), 0..=3)), 1..=terms).prop_map(|ts| {
        let mut p = TracePolynomial::zero();
        for (c, ws) in ts {
            let mut m = TracePolynomial::int(c);
            for w in &ws {
                m = &m * &TracePolynomial::class_var(w);
            }
            p += m;
        }
        p
    })
}

/// `(w1 w2) + (w1 w2^-1) - (w1)(w2)`.
pub fn fundamental(w1: &Word, w2: &Word) -> TracePolynomial {
    TracePolynomial::class_var(&w1.concat(w2)) + TracePolynomial::class_var(&w1.concat(&w2.inverse()))
        - TracePolynomial::class_var(w1) * TracePolynomial::class_var(w2)
}

pub fn parse(s: &str) -> TracePolynomial {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}
