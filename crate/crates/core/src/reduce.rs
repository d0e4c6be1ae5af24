//! Rewriting trace polynomials into the coordinate rings `ℂ[t_I]` and
//! `ℂ[t_I : |I| <= 3]`.
//!
//! Every rule replaces one variable by a polynomial that agrees with it on
//! all SL(2) representations:
//!
//! | rule  | rewrites                         | identity used                                        |
//! |-------|----------------------------------|------------------------------------------------------|
//! | `R1`  | `(1)`                            | `tr(I) = 2`                                          |
//! | `R3`  | class with an inverse letter     | `tr(X Y^-1) = tr(X) tr(Y) - tr(X Y)`                 |
//! | `R4`  | positive class, repeated letter  | `tr(X Y) = tr(X) tr(Y) - tr(X Y^-1)`                 |
//! | `R5`  | positive square-free, unsorted   | `tr(ABZ) + tr(BAZ) = …` (Cayley–Hamilton)            |
//! | `EX1` | `R5` on three letters            | the three-letter case of the same identity           |
//! | `L4`  | `t_I` with `|I| > 3`             | the four-or-more-index elimination identity          |
//!
//! Each rewrite strictly lowers, for every non-final variable it introduces,
//! the measure `(letters, inverse letters, cyclic inversions)` of the
//! variable it replaces. This is checked on every application.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use thiserror::Error;

use crate::tracepoly::{coeff, ratio, TracePolynomial, TraceVar};
use crate::words::{ConjClass, Letter, Word};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Rule {
    R1,
    R3,
    R4,
    R5,
    Ex1,
    L4,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1 => "R1",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::Ex1 => "EX1",
            Rule::L4 => "L4",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReduceError {
    #[error("expected a polynomial in the coordinates t_I, found variable {0}")]
    NotInT(String),
}

/// One rewrite: every occurrence of `var` was replaced by `replacement`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub var: TraceVar,
    pub replacement: TracePolynomial,
}

/// Audit log of a reduction. Replaying the steps on `input` gives `output`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: TracePolynomial,
    pub output: TracePolynomial,
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn replay(&self) -> TracePolynomial {
        self.steps
            .iter()
            .fold(self.input.clone(), |p, s| substitute_var(&p, &s.var, &s.replacement))
    }
}

fn substitute_var(p: &TracePolynomial, var: &TraceVar, by: &TracePolynomial) -> TracePolynomial {
    p.map_vars(|v| {
        if v == var {
            by.clone()
        } else {
            TracePolynomial::var(v.clone())
        }
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Stage {
    /// class variables → coordinates `t_I`
    ToT,
    /// long coordinates → coordinates with at most three indices
    ToT0,
}

type Measure = (usize, usize, usize);

fn measure(v: &TraceVar) -> Measure {
    match v {
        TraceVar::T(idx) => (idx.len(), 0, 0),
        TraceVar::Class(c) => (c.len(), c.word().inverse_count(), c.inversion_count()),
    }
}

fn is_final(stage: Stage, v: &TraceVar) -> bool {
    match (stage, v) {
        (Stage::ToT, TraceVar::T(_)) => true,
        (Stage::ToT0, TraceVar::T(idx)) => idx.len() <= 3,
        (_, TraceVar::Class(_)) => false,
    }
}

fn cls(letters: impl IntoIterator<Item = Letter>) -> TracePolynomial {
    TracePolynomial::class_var(&Word::free_reduce(letters))
}

fn tr_of(indices: &[u32]) -> TracePolynomial {
    TracePolynomial::class_var(&Word::positive(indices))
}

/// The rule that applies to `v` at `stage`, with its replacement.
fn rewrite(stage: Stage, v: &TraceVar) -> Option<(Rule, TracePolynomial)> {
    if is_final(stage, v) {
        return None;
    }
    let out = match (stage, v) {
        (Stage::ToT, TraceVar::Class(c)) => rewrite_class(c),
        (Stage::ToT0, TraceVar::T(idx)) => (Rule::L4, eliminate_long(idx)),
        (Stage::ToT0, TraceVar::Class(c)) if c.len() == 3 && c.word().is_positive_square_free() => rewrite_class(c),
        _ => return None,
    };
    let before = measure(v);
    for (m, _) in out.1.terms() {
        for w in m.vars() {
            assert!(
                is_final(stage, w) || measure(w) < before,
                "rule {} on {v} introduced {w} without lowering the measure",
                out.0
            );
        }
    }
    Some(out)
}

fn rewrite_class(c: &ConjClass) -> (Rule, TracePolynomial) {
    let l = c.word().letters();
    debug_assert!(!l.is_empty());

    // R3 at the last inverse letter: (u a^-1 v) = (a)(v u) - (u a v)
    if let Some(p) = l.iter().rposition(|x| x.is_inverse()) {
        let a = l[p].inverted();
        let (u, v) = (&l[..p], &l[p + 1..]);
        let vu = cls(v.iter().chain(u).copied());
        let uav = cls(u.iter().copied().chain([a]).chain(v.iter().copied()));
        let rep = &(&TracePolynomial::class_var(&Word::free_reduce([a])) * &vu) - &uav;
        return (Rule::R3, rep);
    }

    // R4 on the smallest repeated generator, split at its first two
    // occurrences: (B a C a) = (B a)(C a) - (B C^-1)
    let mut first: HashMap<u32, usize> = HashMap::new();
    let mut repeated: Option<(u32, usize, usize)> = None;
    for (q, x) in l.iter().enumerate() {
        if let Some(&p) = first.get(&x.index()) {
            let better = match repeated {
                None => true,
                Some((i, _, _)) => x.index() < i,
            };
            if better {
                repeated = Some((x.index(), p, q));
            }
        } else {
            first.insert(x.index(), q);
        }
    }
    if let Some((i, p, q)) = repeated {
        let a = Letter::gen(i);
        let b: Vec<Letter> = l[p + 1..q].to_vec();
        let cc: Vec<Letter> = l[q + 1..].iter().chain(&l[..p]).copied().collect();
        let ba = cls(b.iter().copied().chain([a]));
        let ca = cls(cc.iter().copied().chain([a]));
        let c_inv = cc.iter().rev().map(|x| x.inverted());
        let bc = cls(b.iter().copied().chain(c_inv));
        return (Rule::R4, &(&ba * &ca) - &bc);
    }

    // R5 at the first descent of the rotation starting with the least index:
    // (u A B v) = -(u B A v) + (A)(B v u) + (B)(A v u) + (A B)(v u) - (A)(B)(v u)
    let k = (1..l.len() - 1)
        .find(|&k| l[k].index() > l[k + 1].index())
        .expect("unsorted square-free class has a descent after its first letter");
    let (a, b) = (l[k], l[k + 1]);
    let (u, v) = (&l[..k], &l[k + 2..]);
    let ubav = cls(u.iter().copied().chain([b, a]).chain(v.iter().copied()));
    let vu: Vec<Letter> = v.iter().chain(u).copied().collect();
    let ta = cls([a]);
    let tb = cls([b]);
    let bvu = cls([b].into_iter().chain(vu.iter().copied()));
    let avu = cls([a].into_iter().chain(vu.iter().copied()));
    let tab = cls([a, b]);
    let tvu = cls(vu.iter().copied());
    let mut rep = -&ubav;
    rep += &ta * &bvu;
    rep += &tb * &avu;
    rep += &tab * &tvu;
    rep -= &(&(&ta * &tb) * &tvu);
    let rule = if l.len() == 3 { Rule::Ex1 } else { Rule::R5 };
    (rule, rep)
}

/// `t_{ijkα} = ½ ( t_{ik} t_j t_α - t_i t_j t_{kα} - t_j t_k t_{αi} - t_{ik} t_{jα}
///   + t_{ij} t_{kα} + t_{jk} t_{αi} - t_{ikj} t_α + t_i t_{jkα} + t_j t_{kαi} + t_k t_{αij} )`
fn eliminate_long(idx: &[u32]) -> TracePolynomial {
    let (i, j, k) = (idx[0], idx[1], idx[2]);
    let alpha = &idx[3..];
    let cat = |pre: &[u32], post: &[u32]| -> Vec<u32> { pre.iter().chain(post).copied().collect() };
    let t = |s: &[u32]| tr_of(s);

    let ti = t(&[i]);
    let tj = t(&[j]);
    let tk = t(&[k]);
    let ta = t(alpha);
    let tik = t(&[i, k]);
    let tij = t(&[i, j]);
    let tjk = t(&[j, k]);
    let tka = t(&cat(&[k], alpha));
    let tai = t(&cat(alpha, &[i]));
    let tja = t(&cat(&[j], alpha));
    let tikj = t(&[i, k, j]);
    let tjka = t(&cat(&[j, k], alpha));
    let tkai = t(&[&[k][..], alpha, &[i]].concat());
    let taij = t(&cat(alpha, &[i, j]));

    let mut r = &(&tik * &tj) * &ta;
    r -= &(&(&ti * &tj) * &tka);
    r -= &(&(&tj * &tk) * &tai);
    r -= &(&tik * &tja);
    r += &tij * &tka;
    r += &tjk * &tai;
    r -= &(&tikj * &ta);
    r += &ti * &tjka;
    r += &tj * &tkai;
    r += &tk * &taij;
    r.scale(&ratio(1, 2))
}

/// Memoizing reduction engine. Safe to share between threads; the memo tables
/// are the only shared state.
#[derive(Default)]
pub struct Reducer {
    to_t: RwLock<HashMap<TraceVar, Arc<TracePolynomial>>>,
    to_t0: RwLock<HashMap<TraceVar, Arc<TracePolynomial>>>,
    psi: RwLock<HashMap<TraceVar, Arc<TracePolynomial>>>,
}

static GLOBAL: LazyLock<Reducer> = LazyLock::new(Reducer::new);

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance used by the free functions of this module.
    pub fn global() -> &'static Reducer {
        &GLOBAL
    }

    fn memo(&self, stage: Stage) -> &RwLock<HashMap<TraceVar, Arc<TracePolynomial>>> {
        match stage {
            Stage::ToT => &self.to_t,
            Stage::ToT0 => &self.to_t0,
        }
    }

    fn normal_var(&self, stage: Stage, v: &TraceVar) -> Arc<TracePolynomial> {
        if is_final(stage, v) {
            return Arc::new(TracePolynomial::var(v.clone()));
        }
        if let Some(hit) = self.memo(stage).read().unwrap().get(v) {
            return hit.clone();
        }
        let (_, rep) = rewrite(stage, v).expect("non-final variable has a rule");
        let nf = Arc::new(rep.map_vars(|w| (*self.normal_var(stage, w)).clone()));
        self.memo(stage).write().unwrap().entry(v.clone()).or_insert(nf).clone()
    }

    /// Expresses the trace of a class in the coordinates `t_I`.
    pub fn reduce_class(&self, c: &ConjClass) -> TracePolynomial {
        match TraceVar::from_class(c.clone()) {
            None => TracePolynomial::int(2),
            Some(v) => (*self.normal_var(Stage::ToT, &v)).clone(),
        }
    }

    pub fn reduce_to_t(&self, p: &TracePolynomial) -> TracePolynomial {
        p.map_vars(|v| (*self.normal_var(Stage::ToT, v)).clone())
    }

    /// Eliminates coordinates with more than three indices.
    pub fn reduce_to_t0(&self, p: &TracePolynomial) -> Result<TracePolynomial, ReduceError> {
        check_in_t(p)?;
        Ok(p.map_vars(|v| (*self.normal_var(Stage::ToT0, v)).clone()))
    }

    fn psi_var(&self, v: &TraceVar) -> Arc<TracePolynomial> {
        if is_final(Stage::ToT0, v) {
            return Arc::new(TracePolynomial::var(v.clone()));
        }
        if let Some(hit) = self.psi.read().unwrap().get(v) {
            return hit.clone();
        }
        let in_t = self.normal_var(Stage::ToT, v);
        let nf = Arc::new(in_t.map_vars(|w| (*self.normal_var(Stage::ToT0, w)).clone()));
        self.psi.write().unwrap().entry(v.clone()).or_insert(nf).clone()
    }

    /// Normal form in the coordinates `t_I, |I| <= 3`.
    pub fn psi_normal_form(&self, p: &TracePolynomial) -> TracePolynomial {
        p.map_vars(|v| (*self.psi_var(v)).clone())
    }
}

fn check_in_t(p: &TracePolynomial) -> Result<(), ReduceError> {
    match p.variables().into_iter().find(|v| !v.is_coordinate()) {
        Some(v) => Err(ReduceError::NotInT(v.to_string())),
        None => Ok(()),
    }
}

pub fn reduce_class(c: &ConjClass) -> TracePolynomial {
    Reducer::global().reduce_class(c)
}

pub fn reduce_to_t(p: &TracePolynomial) -> TracePolynomial {
    Reducer::global().reduce_to_t(p)
}

pub fn reduce_to_t0(p: &TracePolynomial) -> Result<TracePolynomial, ReduceError> {
    Reducer::global().reduce_to_t0(p)
}

pub fn psi_normal_form(p: &TracePolynomial) -> TracePolynomial {
    Reducer::global().psi_normal_form(p)
}

/// Rewrites one variable at a time, logging each step. No memo is consulted,
/// so equal inputs always give equal traces.
fn traced(stage: Stage, p: &TracePolynomial, steps: &mut Vec<Step>) -> TracePolynomial {
    let mut cur = p.clone();
    loop {
        let pending: Vec<TraceVar> = cur.variables().into_iter().filter(|v| !is_final(stage, v)).collect();
        let pick = match stage {
            Stage::ToT => pending.into_iter().max(),
            Stage::ToT0 => {
                let longest = pending.iter().filter(|v| v.is_coordinate()).map(|v| v.length()).max();
                match longest {
                    Some(l) => pending.into_iter().find(|v| v.is_coordinate() && v.length() == l),
                    None => pending.into_iter().min(),
                }
            }
        };
        let Some(var) = pick else { return cur };
        let (rule, replacement) = rewrite(stage, &var).expect("pending variable has a rule");
        cur = substitute_var(&cur, &var, &replacement);
        steps.push(Step { rule, var, replacement });
    }
}

pub fn reduce_to_t_traced(p: &TracePolynomial) -> ReductionTrace {
    let mut steps = Vec::new();
    let output = traced(Stage::ToT, p, &mut steps);
    ReductionTrace {
        input: p.clone(),
        output,
        steps,
    }
}

pub fn reduce_to_t0_traced(p: &TracePolynomial) -> Result<ReductionTrace, ReduceError> {
    check_in_t(p)?;
    let mut steps = Vec::new();
    let output = traced(Stage::ToT0, p, &mut steps);
    Ok(ReductionTrace {
        input: p.clone(),
        output,
        steps,
    })
}

pub fn psi_normal_form_traced(p: &TracePolynomial) -> ReductionTrace {
    let mut steps = Vec::new();
    let in_t = traced(Stage::ToT, p, &mut steps);
    let output = traced(Stage::ToT0, &in_t, &mut steps);
    ReductionTrace {
        input: p.clone(),
        output,
        steps,
    }
}

/// The three-letter trace identity on words `x, y, z`:
/// `(x)(y)(z) - (xy)(z) - (xz)(y) - (yz)(x) + (xyz) + (xzy)`.
pub fn triple_identity(x: &Word, y: &Word, z: &Word) -> TracePolynomial {
    let c = |parts: &[&Word]| {
        let w = parts.iter().fold(Word::identity(), |acc, p| acc.concat(p));
        TracePolynomial::class_var(&w)
    };
    let mut p = &(&c(&[x]) * &c(&[y])) * &c(&[z]);
    p -= &(&c(&[x, y]) * &c(&[z]));
    p -= &(&c(&[x, z]) * &c(&[y]));
    p -= &(&c(&[y, z]) * &c(&[x]));
    p += c(&[x, y, z]);
    p += c(&[x, z, y]);
    p
}

/// The four-block trace identity on words `i, j, k` and `alpha`, used to
/// eliminate coordinates with four or more indices:
/// `-2 (ijkα) + (ik)(j)(α) - (i)(j)(kα) - (j)(k)(αi) - (ik)(jα) + (ij)(kα)
///  + (jk)(αi) - (ikj)(α) + (i)(jkα) + (j)(kαi) + (k)(αij)`.
pub fn long_elimination_identity(i: &Word, j: &Word, k: &Word, alpha: &Word) -> TracePolynomial {
    let c = |parts: &[&Word]| {
        let w = parts.iter().fold(Word::identity(), |acc, p| acc.concat(p));
        TracePolynomial::class_var(&w)
    };
    let mut q = c(&[i, j, k, alpha]).scale(&coeff(-2));
    q += &(&c(&[i, k]) * &c(&[j])) * &c(&[alpha]);
    q -= &(&(&c(&[i]) * &c(&[j])) * &c(&[k, alpha]));
    q -= &(&(&c(&[j]) * &c(&[k])) * &c(&[alpha, i]));
    q -= &(&c(&[i, k]) * &c(&[j, alpha]));
    q += &c(&[i, j]) * &c(&[k, alpha]);
    q += &c(&[j, k]) * &c(&[alpha, i]);
    q -= &(&c(&[i, k, j]) * &c(&[alpha]));
    q += &c(&[i]) * &c(&[j, k, alpha]);
    q += &c(&[j]) * &c(&[k, alpha, i]);
    q += &c(&[k]) * &c(&[alpha, i, j]);
    q
}
