//! Bundled verification suites. Every suite is deterministic for a seed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SuiteName;
use crate::charring::{
    buchberger, certifies_psi_zero, gm_generators, handlebody_member, manifold_ideal, q1, quotient_dimension,
    MonomialOrder, Presentation, QuotientDimension,
};
use crate::reduce::{long_elimination_identity, psi_normal_form, reduce_to_t, triple_identity};
use crate::repeval::{
    det4, eval_coordinates, eval_poly, j_const, jstar_const, m4_of, random_any, verify_identity, Matrix2, Matrix4,
    Mode, Representation, DEFAULT_SIZE_BOUND,
};
use crate::symgroup::{
    lemma6_identity, lemma7_identity, procesi_generators, relabel, young_symmetrizer, GroupAlgebraElement, Permutation,
    SymError, Tableau,
};
use crate::tracepoly::{coeff, Coeff, TracePolynomial, TraceVar};
use crate::words::Word;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteName::Identities => "identities",
            SuiteName::Procesi => "procesi",
            SuiteName::Gm => "gm",
            SuiteName::Charrings => "charrings",
        })
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn check<F: FnOnce() -> (bool, String)>(&mut self, name: impl Into<String>, f: F) {
        let start = Instant::now();
        let (passed, detail) = f();
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
            elapsed: start.elapsed(),
        });
    }
}

pub fn run_suite(name: SuiteName, seed: u64) -> SuiteReport {
    let mut rec = Recorder { checks: Vec::new() };
    match name {
        SuiteName::Identities => identities(&mut rec, seed),
        SuiteName::Procesi => {
            for m in 3..=5 {
                let r = procesi_check(m, 20, seed, false).expect("m <= 5 is within the default cap");
                rec.checks.extend(r.checks);
            }
            rec.check("two-row symmetrizer is not an identity", || {
                let y = Tableau::new(vec![vec![1, 2]]).expect("valid tableau");
                let p = young_symmetrizer(&y).to_trace_poly();
                let r = verify_identity(&p, 20, seed, Mode::Any).expect("inverse-free");
                (!r.passed(), format!("polynomial {p}"))
            });
        }
        SuiteName::Gm => gm(&mut rec, seed),
        SuiteName::Charrings => charrings(&mut rec, seed),
    }
    SuiteReport {
        name: name.to_string(),
        seed,
        checks: rec.checks,
    }
}

/// `(w1 w2) + (w1 w2^-1) - (w1)(w2)`.
pub fn fundamental(w1: &Word, w2: &Word) -> TracePolynomial {
    TracePolynomial::class_var(&w1.concat(w2)) + TracePolynomial::class_var(&w1.concat(&w2.inverse()))
        - TracePolynomial::class_var(w1) * TracePolynomial::class_var(w2)
}

/// The three-generator relation written with classes of positive words.
pub const THREE_GENERATOR_RELATION: &str = "(a1)^2 + (a2)^2 + (a3)^2 + (a1 a2)^2 + (a1 a3)^2 + (a2 a3)^2 \
    + (a1 a2 a3)^2 + (a1 a2)(a1 a3)(a2 a3) + (a1 a2 a3)(a1)(a2)(a3) - (a1 a2 a3)(a1)(a2 a3) \
    - (a1 a2 a3)(a2)(a1 a3) - (a1 a2 a3)(a3)(a1 a2) - (a1)(a2)(a1 a2) - (a1)(a3)(a1 a3) \
    - (a2)(a3)(a2 a3) - 4";

fn vanishes_sl2(p: &TracePolynomial, trials: u64, seed: u64) -> bool {
    verify_identity(p, trials, seed, Mode::Sl2)
        .map(|r| r.passed())
        .unwrap_or(false)
}

fn identities(rec: &mut Recorder, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, Word, Word)> = (0..200)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            (n, Word::random(&mut rng, 6, n), Word::random(&mut rng, 6, n))
        })
        .collect();
    let residues: Vec<(u32, TracePolynomial)> = pairs
        .iter()
        .map(|(n, a, b)| (*n, psi_normal_form(&fundamental(a, b))))
        .filter(|(_, r)| !r.is_zero())
        .collect();
    rec.check("fundamental identity normal forms are zero (200 pairs)", || {
        (residues.is_empty(), format!("{} of 200 nonzero", residues.len()))
    });
    rec.check("nonzero fundamental residues vanish on SL2", || {
        let ok = residues.iter().all(|(_, r)| vanishes_sl2(r, 5, seed));
        (ok, format!("{} residues, 5 samples each", residues.len()))
    });
    rec.check("three-generator residues lie in the handlebody ideal", || {
        let small: Vec<_> = residues.iter().filter(|(_, r)| r.max_index() <= 3).collect();
        let ok = small.iter().all(|(_, r)| handlebody_member(r).unwrap_or(false));
        (ok, format!("{} residues checked", small.len()))
    });
    rec.check("fundamental identity vanishes on SL2 (200 pairs)", || {
        let ok = pairs.iter().all(|(_, a, b)| vanishes_sl2(&fundamental(a, b), 5, seed));
        (ok, "5 samples each".into())
    });
    let (a1, a2, a3) = (Word::gen(1), Word::gen(2), Word::gen(3));
    let triple = triple_identity(&a1, &a2, &a3);
    rec.check("three-letter identity reduces to zero", || {
        let r = reduce_to_t(&triple);
        (r.is_zero(), format!("reduced form {r}"))
    });
    rec.check("three-letter identity vanishes on arbitrary matrices", || {
        let ok = verify_identity(&triple, 50, seed, Mode::Any)
            .map(|r| r.passed())
            .unwrap_or(false);
        (ok, "50 samples".into())
    });
    let rel: TracePolynomial = THREE_GENERATOR_RELATION.parse().expect("valid polynomial");
    rec.check("three-generator relation equals q1(1,2,3)", || {
        (rel == q1(1, 2, 3), format!("{} terms", rel.num_terms()))
    });
    rec.check("three-generator relation vanishes on SL2", || {
        (vanishes_sl2(&rel, 50, seed), "50 samples".into())
    });
    rec.check("substituted three-letter identities reduce to zero (50)", || {
        let mut bad = 0;
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let w: Vec<Word> = (0..3).map(|_| Word::random(&mut rng, 3, n)).collect();
            if !psi_normal_form(&triple_identity(&w[0], &w[1], &w[2])).is_zero() {
                bad += 1;
            }
        }
        (bad == 0, format!("{bad} of 50 nonzero"))
    });
}

/// Vanishing and membership checks for every symmetrizer with at least three
/// rows on `m` letters, with random relabellings and left multiples.
pub fn procesi_check(m: usize, trials: u64, seed: u64, allow_large: bool) -> Result<SuiteReport, SymError> {
    let letters: Vec<u32> = (1..=m as u32).collect();
    let gens = procesi_generators(&letters, allow_large)?;
    let mut rec = Recorder { checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m as u64) << 32);
    if gens.is_empty() {
        rec.check(format!("m = {m}"), || (true, "no diagram has three rows".into()));
    }
    for (y, s) in gens {
        let shape: Vec<String> = y.shape().iter().map(|k| k.to_string()).collect();
        let shape = shape.join(",");
        let mut variants: Vec<GroupAlgebraElement> = vec![s.clone()];
        for _ in 0..3 {
            let mut img = letters.clone();
            img.shuffle(&mut rng);
            let sub: HashMap<u32, u32> = letters.iter().copied().zip(img).collect();
            variants.push(relabel(&s, &sub)?);
        }
        for _ in 0..3 {
            let mut img = letters.clone();
            img.shuffle(&mut rng);
            let len = rng.gen_range(2..=m);
            let tau = Permutation::from_cycles(&letters, &[&img[..len]])?;
            variants.push(GroupAlgebraElement::from_perm(tau).mul(&s)?);
        }
        let polys: Vec<TracePolynomial> = variants.iter().map(GroupAlgebraElement::to_trace_poly).collect();
        rec.check(
            format!("m = {m}, shape {shape}: vanishes on arbitrary matrices"),
            || {
                let ok = polys.iter().all(|p| {
                    verify_identity(p, trials, seed, Mode::Any)
                        .map(|r| r.passed())
                        .unwrap_or(false)
                });
                (ok, format!("{} variants, {trials} samples each", polys.len()))
            },
        );
        if m <= 4 {
            rec.check(
                format!("m = {m}, shape {shape}: normal forms lie in the handlebody ideal"),
                || {
                    let mut zero = 0;
                    let mut ok = true;
                    for p in &polys {
                        let q = psi_normal_form(p);
                        if q.is_zero() {
                            zero += 1;
                        } else {
                            ok &= handlebody_member(&q).unwrap_or(false);
                        }
                    }
                    (ok, format!("{} variants, {zero} with normal form 0", polys.len()))
                },
            );
        }
    }
    Ok(SuiteReport {
        name: format!("procesi-check m={m}"),
        seed,
        checks: rec.checks,
    })
}

fn trace(m: &Matrix2) -> Coeff {
    m.trace()
}

/// Four random integer matrices with arbitrary determinant.
pub fn random_quad<R: Rng>(rng: &mut R) -> [Matrix2; 4] {
    std::array::from_fn(|_| random_any(rng, DEFAULT_SIZE_BOUND, false))
}

/// Checks `(tr(A_i B_j)) = M(A) J M(B)^t` entrywise.
pub fn trace_matrix_identity(a: &[Matrix2; 4], b: &[Matrix2; 4]) -> bool {
    let rhs = m4_of(a).mul(&j_const()).mul(&m4_of(b).transpose());
    (0..4).all(|i| (0..4).all(|j| &trace(&a[i].mul(&b[j])) == rhs.entry(i, j)))
}

/// Checks `tr(A_i B_j) - tr(A_i) tr(B_j) = -(M(A) J J* M(B)^t)_ij`.
pub fn centered_trace_identity(a: &[Matrix2; 4], b: &[Matrix2; 4]) -> bool {
    let rhs = m4_of(a).mul(&j_const()).mul(&jstar_const()).mul(&m4_of(b).transpose());
    (0..4).all(|i| (0..4).all(|j| trace(&a[i].mul(&b[j])) - trace(&a[i]) * trace(&b[j]) == -rhs.entry(i, j).clone()))
}

/// With `A_4 = I`: `det M(A) = tr(A1 A2 A3) - tr(A1 A3 A2)`.
pub fn determinant_trace_identity(a: &[Matrix2; 4]) -> bool {
    let mut a = a.clone();
    a[3] = Matrix2::identity();
    det4(&m4_of(&a)) == trace(&a[0].mul(&a[1]).mul(&a[2])) - trace(&a[0].mul(&a[2]).mul(&a[1]))
}

fn gm(rec: &mut Recorder, seed: u64) {
    for n in [3u32, 4] {
        rec.check(format!("handlebody generators for n = {n} vanish on SL2"), || {
            let gens = gm_generators(n);
            let ok = gens.iter().all(|g| vanishes_sl2(g, 50, seed));
            (ok, format!("{} generators, 50 samples each", gens.len()))
        });
    }
    rec.check("handlebody generators for n = 5 vanish on SL2", || {
        let gens = gm_generators(5);
        let ok = gens.iter().all(|g| vanishes_sl2(g, 10, seed));
        (ok, format!("{} generators, 10 samples each", gens.len()))
    });
    rec.check("four-block identity is in the handlebody ideal for n = 4", || {
        let q = long_elimination_identity(&Word::gen(1), &Word::gen(2), &Word::gen(3), &Word::gen(4));
        let ok = certifies_psi_zero(&q, &Presentation::free(4)).unwrap_or(false);
        (ok, format!("normal form {}", psi_normal_form(&q)))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rec.check("trace matrix factorization (20 samples)", || {
        let ok = (0..20).all(|_| trace_matrix_identity(&random_quad(&mut rng), &random_quad(&mut rng)));
        (ok, "entrywise".into())
    });
    rec.check("centered trace factorization (20 samples)", || {
        let ok = (0..20).all(|_| centered_trace_identity(&random_quad(&mut rng), &random_quad(&mut rng)));
        (ok, "entrywise".into())
    });
    rec.check("det(I - J*) = 0", || {
        let d = det4(&Matrix4::identity().sub(&jstar_const()));
        (d.is_zero(), format!("det = {d}"))
    });
    rec.check("determinant of M(A) with A4 = I (20 samples)", || {
        (
            (0..20).all(|_| determinant_trace_identity(&random_quad(&mut rng))),
            "exact".into(),
        )
    });
    rec.check("4x4 trace determinant identity vanishes (20 samples)", || {
        let p = lemma6_identity([1, 2, 3, 4], [5, 6, 7, 8]).expect("distinct letters");
        let ok = verify_identity(&p, 20, seed, Mode::Any)
            .map(|r| r.passed())
            .unwrap_or(false);
        (ok, format!("{} terms", p.num_terms()))
    });
    rec.check("three-letter determinant identity vanishes (20 samples)", || {
        let p = lemma7_identity([1, 2, 3], [4, 5, 6]).expect("distinct letters");
        let ok = verify_identity(&p, 20, seed, Mode::Any)
            .map(|r| r.passed())
            .unwrap_or(false);
        (ok, format!("{} terms", p.num_terms()))
    });
}

/// `<a | a^p>`.
pub fn cyclic_presentation(p: i64) -> Presentation {
    Presentation::new(1, vec![Word::gen(1).power(p)]).expect("nontrivial relator")
}

/// `<a, b | a b a b^-1 a^-1 b^-1>`.
pub fn trefoil_presentation() -> Presentation {
    Presentation::new(2, vec!["a1 a2 a1 a2^-1 a1^-1 a2^-1".parse().expect("valid word")]).expect("nontrivial relator")
}

/// Point `(t1, t2, t12) = (x, y, z)`.
pub fn coordinates2(x: Coeff, y: Coeff, z: Coeff) -> BTreeMap<TraceVar, Coeff> {
    [
        (TraceVar::t(&[1]), x),
        (TraceVar::t(&[2]), y),
        (TraceVar::t(&[1, 2]), z),
    ]
    .into_iter()
    .collect()
}

fn random_rational<R: Rng>(rng: &mut R) -> Coeff {
    Coeff::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=6).into())
}

fn charrings(rec: &mut Recorder, seed: u64) {
    for p in 2..=5i64 {
        rec.check(format!("quotient dimension for <a | a^{p}>"), || {
            let g = buchberger(&manifold_ideal(&cyclic_presentation(p)), MonomialOrder::Grevlex);
            let expected = QuotientDimension::Finite((p / 2 + 1) as u64);
            match g {
                Ok(g) => {
                    let d = quotient_dimension(&g);
                    (d == expected, format!("got {d}, expected {expected}"))
                }
                Err(e) => (false, e.to_string()),
            }
        });
    }
    rec.check("free group on 2 generators has the zero ideal", || {
        let ideal = manifold_ideal(&Presentation::free(2));
        let d = buchberger(&ideal, MonomialOrder::Grevlex).map(|g| quotient_dimension(&g));
        (
            ideal.generators.is_empty() && matches!(d, Ok(QuotientDimension::Infinite)),
            format!("{} generators", ideal.generators.len()),
        )
    });
    rec.check("free group on 3 generators gives q1 and q4", || {
        let ideal = manifold_ideal(&Presentation::free(3));
        (
            ideal.generators == gm_generators(3) && ideal.generators.len() == 2,
            "exact".into(),
        )
    });
    let trefoil = manifold_ideal(&trefoil_presentation());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all_vanish = |pt: &BTreeMap<TraceVar, Coeff>| {
        trefoil
            .generators
            .iter()
            .all(|g| eval_coordinates(g, pt).map(|v| v.is_zero()).unwrap_or(false))
    };
    rec.check("trefoil ideal vanishes on the abelian component", || {
        let ok = (0..20).all(|_| {
            let s = random_rational(&mut rng);
            all_vanish(&coordinates2(s.clone(), s.clone(), &s * &s - coeff(2)))
        });
        (ok, "20 points x = y, z = x^2 - 2".into())
    });
    rec.check("trefoil ideal vanishes on the nonabelian component", || {
        let ok = (0..20).all(|_| {
            let s = random_rational(&mut rng);
            all_vanish(&coordinates2(s.clone(), s, Coeff::one()))
        });
        (ok, "20 points x = y, z = 1".into())
    });
    rec.check("trefoil ideal does not vanish off the variety", || {
        let mut tested = 0;
        let mut ok = true;
        while tested < 20 {
            let (x, y, z) = (
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
            );
            let on_abelian = x == y && z == &x * &x - coeff(2);
            let on_nonabelian = x == y && z.is_one();
            if on_abelian || on_nonabelian {
                continue;
            }
            tested += 1;
            ok &= !all_vanish(&coordinates2(x, y, z));
        }
        (ok, "20 random points".into())
    });
    rec.check("(a1) - 2 is not certified", || {
        let p: TracePolynomial = "(a1) - 2".parse().expect("valid polynomial");
        let certified = certifies_psi_zero(&p, &Presentation::free(1)).unwrap_or(true);
        (!certified, "free group on 1 generator".into())
    });
    rec.check("trefoil relator is satisfied by an explicit representation", || {
        // a = [[s, 1], [0, 1/s]], b = [[s, 0], [c, 1/s]] with c = 1 - s^2 - 1/s^2
        let s = coeff(2);
        let c = Coeff::one() - &s * &s - (&s * &s).recip();
        let a = Matrix2::new(s.clone(), Coeff::one(), Coeff::zero(), s.recip());
        let b = Matrix2::new(s.clone(), Coeff::zero(), c, s.recip());
        let rep = Representation::new(Mode::Sl2, [(1, a), (2, b)].into_iter().collect()).expect("det 1");
        let ideal_ok = trefoil
            .generators
            .iter()
            .all(|g| eval_poly(&rep, g).map(|v| v.is_zero()).unwrap_or(false));
        (ideal_ok, "nonabelian point with x = y = 5/2".into())
    });
}
