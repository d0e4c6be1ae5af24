//! Buchberger's algorithm over the rationals with the Gebauer–Möller pair
//! criteria.
//!
//! Polynomials are dense exponent vectors over a fixed variable list; index 0
//! is the largest variable.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::tracepoly::{Coeff, Monomial, TracePolynomial, TraceVar};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum MonomialOrder {
    /// graded reverse lexicographic
    Grevlex,
    /// pure lexicographic
    Lex,
}

impl FromStr for MonomialOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            _ => Err(format!("unknown monomial order `{s}` (expected grevlex or lex)")),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("step budget of {0} reductions exceeded")]
    BudgetExceeded(u64),
    #[error("computation cancelled")]
    Cancelled,
    #[error("variable {0} is not in the ring")]
    UnknownVariable(String),
}

/// Limits for a single Buchberger run.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum number of single-term reduction steps.
    pub budget: u64,
    pub cancel: Option<Arc<AtomicBool>>,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            budget: DEFAULT_BUDGET,
            cancel: None,
        }
    }
}

type Exps = Box<[u16]>;

/// Sort key realizing the monomial order as plain lexicographic comparison.
type Key = Box<[i32]>;

#[derive(Clone, Debug)]
pub(crate) struct Ring {
    pub vars: Vec<TraceVar>,
    pub order: MonomialOrder,
    index: HashMap<TraceVar, usize>,
}

impl Ring {
    pub fn new(vars: Vec<TraceVar>, order: MonomialOrder) -> Self {
        let index = vars.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ring { vars, order, index }
    }

    fn key(&self, e: &[u16]) -> Key {
        match self.order {
            MonomialOrder::Lex => e.iter().map(|&x| x as i32).collect(),
            MonomialOrder::Grevlex => {
                let deg: i32 = e.iter().map(|&x| x as i32).sum();
                std::iter::once(deg)
                    .chain(e.iter().rev().map(|&x| -(x as i32)))
                    .collect()
            }
        }
    }

    pub fn encode(&self, p: &TracePolynomial) -> Result<Poly, GroebnerError> {
        let mut terms = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut e = vec![0u16; self.vars.len()];
            for (v, k) in m.factors() {
                let i = *self
                    .index
                    .get(v)
                    .ok_or_else(|| GroebnerError::UnknownVariable(v.to_string()))?;
                e[i] = *k as u16;
            }
            let e: Exps = e.into();
            terms.insert(self.key(&e), (e, c.clone()));
        }
        Ok(Poly { terms })
    }

    pub fn decode(&self, p: &Poly) -> TracePolynomial {
        let mut out = TracePolynomial::zero();
        for (e, c) in p.terms.values() {
            let m = Monomial::from_factors(
                e.iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| (self.vars[i].clone(), k as u32)),
            );
            out += TracePolynomial::term(c.clone(), m);
        }
        out
    }
}

/// Terms keyed by order key; the last entry is the leading term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    terms: BTreeMap<Key, (Exps, Coeff)>,
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> Option<(&Key, &Exps, &Coeff)> {
        self.terms.iter().next_back().map(|(k, (e, c))| (k, e, c))
    }

    pub fn lead_exps(&self) -> Option<&Exps> {
        self.lead().map(|(_, e, _)| e)
    }

    fn make_monic(&mut self) {
        if let Some((_, _, c)) = self.lead() {
            let inv = c.recip();
            for (_, k) in self.terms.values_mut() {
                *k *= &inv;
            }
        }
    }

    /// `self -= c · x^shift · g`
    fn sub_scaled(&mut self, ring: &Ring, c: &Coeff, shift: &[u16], g: &Poly) {
        for (e, k) in g.terms.values() {
            let ne: Exps = e.iter().zip(shift).map(|(a, b)| a + b).collect();
            let key = ring.key(&ne);
            let delta = c * k;
            match self.terms.get_mut(&key) {
                Some((_, v)) => {
                    *v -= delta;
                    if v.is_zero() {
                        self.terms.remove(&key);
                    }
                }
                None => {
                    self.terms.insert(key, (ne, -delta));
                }
            }
        }
    }
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn diff(a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn total_degree(a: &[u16]) -> u32 {
    a.iter().map(|&x| x as u32).sum()
}

struct Budget<'a> {
    used: u64,
    limits: &'a Limits,
}

impl Budget<'_> {
    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.used += 1;
        if self.used > self.limits.budget {
            return Err(GroebnerError::BudgetExceeded(self.limits.budget));
        }
        Ok(())
    }

    fn poll(&self) -> Result<(), GroebnerError> {
        match &self.limits.cancel {
            Some(flag) if flag.load(AtomicOrdering::Relaxed) => Err(GroebnerError::Cancelled),
            _ => Ok(()),
        }
    }
}

/// Full reduction of `p` by `basis` (every term, not only the leading one).
fn reduce_full(ring: &Ring, mut p: Poly, basis: &[&Poly], budget: &mut Budget<'_>) -> Result<Poly, GroebnerError> {
    let mut rem = Poly { terms: BTreeMap::new() };
    while let Some((key, (e, c))) = p.terms.pop_last() {
        let reducer = basis
            .iter()
            .find(|g| divides(g.lead_exps().expect("nonzero basis element"), &e));
        match reducer {
            Some(g) => {
                budget.tick()?;
                let (_, ge, gc) = g.lead().unwrap();
                let shift = diff(&e, ge);
                let factor = &c / gc;
                // the leading term cancels exactly inside sub_scaled
                p.terms.insert(key, (e, c));
                p.sub_scaled(ring, &factor, &shift, g);
            }
            None => {
                rem.terms.insert(key, (e, c));
            }
        }
    }
    Ok(rem)
}

fn s_poly(ring: &Ring, f: &Poly, g: &Poly) -> Poly {
    let (_, fe, fc) = f.lead().unwrap();
    let (_, ge, gc) = g.lead().unwrap();
    let l = lcm(fe, ge);
    let mut out = Poly { terms: BTreeMap::new() };
    out.sub_scaled(ring, &-fc.recip(), &diff(&l, fe), f);
    out.sub_scaled(ring, &gc.recip(), &diff(&l, ge), g);
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
}

/// Gebauer–Möller update: adds `h` (index `t`) to the basis, pruning pairs.
fn update(basis: &[Poly], live: &mut Vec<usize>, pairs: &mut Vec<Pair>, t: usize) {
    let ht = basis[t].lead_exps().unwrap().clone();
    let mut cands: Vec<(usize, Exps, bool)> = live
        .iter()
        .map(|&i| {
            let hi = basis[i].lead_exps().unwrap();
            (i, lcm(hi, &ht), coprime(hi, &ht))
        })
        .collect();

    // drop candidates whose lcm is a proper multiple of another candidate's lcm
    let mut keep: Vec<(usize, Exps, bool)> = Vec::new();
    for (k, (i, l, cp)) in cands.iter().enumerate() {
        let dominated = cands
            .iter()
            .enumerate()
            .any(|(k2, (_, l2, _))| k2 != k && divides(l2, l) && l2 != l);
        if !dominated {
            keep.push((*i, l.clone(), *cp));
        }
    }
    // among equal lcms keep one, preferring a coprime witness (then drop all)
    let mut by_lcm: BTreeMap<Exps, Vec<(usize, bool)>> = BTreeMap::new();
    for (i, l, cp) in keep {
        by_lcm.entry(l).or_default().push((i, cp));
    }
    let mut fresh: Vec<Pair> = Vec::new();
    for (l, group) in by_lcm {
        if group.iter().any(|(_, cp)| *cp) {
            continue;
        }
        let i = group[0].0;
        fresh.push(Pair { i, j: t, lcm: l });
    }
    cands.clear();

    // old pairs made redundant by the new leading term
    pairs.retain(|p| {
        !(divides(&ht, &p.lcm)
            && lcm(basis[p.i].lead_exps().unwrap(), &ht) != p.lcm
            && lcm(basis[p.j].lead_exps().unwrap(), &ht) != p.lcm)
    });
    pairs.extend(fresh);

    // basis elements whose leading term the new one divides stop generating pairs
    live.retain(|&i| !divides(&ht, basis[i].lead_exps().unwrap()));
    live.push(t);
}

/// Reduced Gröbner basis of the ideal generated by `gens` (nonzero entries).
pub(crate) fn groebner(ring: &Ring, gens: Vec<Poly>, limits: &Limits) -> Result<Vec<Poly>, GroebnerError> {
    let mut budget = Budget { used: 0, limits };
    let mut basis: Vec<Poly> = Vec::new();
    let mut live: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| {
        let (ka, _, _) = a.lead().unwrap();
        let (kb, _, _) = b.lead().unwrap();
        ka.cmp(kb)
    });
    for g in gens {
        budget.poll()?;
        let active: Vec<&Poly> = live.iter().map(|&i| &basis[i]).collect();
        let mut h = reduce_full(ring, g, &active, &mut budget)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        basis.push(h);
        update(&basis, &mut live, &mut pairs, basis.len() - 1);
    }

    while !pairs.is_empty() {
        budget.poll()?;
        // normal strategy: least lcm degree, then least lcm, then indices
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                total_degree(&pa.lcm)
                    .cmp(&total_degree(&pb.lcm))
                    .then_with(|| ring.key(&pa.lcm).cmp(&ring.key(&pb.lcm)))
                    .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_poly(ring, &basis[pair.i], &basis[pair.j]);
        let active: Vec<&Poly> = live.iter().map(|&i| &basis[i]).collect();
        let mut h = reduce_full(ring, s, &active, &mut budget)?;
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        basis.push(h);
        update(&basis, &mut live, &mut pairs, basis.len() - 1);
    }

    // minimal basis, then inter-reduce tails
    let mut minimal: Vec<Poly> = live.iter().map(|&i| basis[i].clone()).collect();
    minimal.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    let mut kept: Vec<Poly> = Vec::new();
    for (k, g) in minimal.iter().enumerate() {
        let ge = g.lead_exps().unwrap();
        let redundant = minimal.iter().enumerate().any(|(k2, o)| {
            let oe = o.lead_exps().unwrap();
            k2 != k && divides(oe, ge) && (oe != ge || k2 < k)
        });
        if !redundant {
            kept.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(kept.len());
    for k in 0..kept.len() {
        let others: Vec<&Poly> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, g)| g)
            .collect();
        let mut g = kept[k].clone();
        let (lk, (le, lc)) = g.terms.pop_last().unwrap();
        let mut tail = reduce_full(ring, g, &others, &mut budget)?;
        tail.terms.insert(lk, (le, lc));
        tail.make_monic();
        reduced.push(tail);
    }
    reduced.sort_by(|a, b| a.lead().unwrap().0.cmp(b.lead().unwrap().0));
    Ok(reduced)
}

/// Normal form of `p` modulo a Gröbner basis.
pub(crate) fn normal_form(ring: &Ring, p: Poly, basis: &[Poly]) -> Poly {
    let limits = Limits {
        budget: u64::MAX,
        cancel: None,
    };
    let mut budget = Budget {
        used: 0,
        limits: &limits,
    };
    let basis: Vec<&Poly> = basis.iter().collect();
    reduce_full(ring, p, &basis, &mut budget).expect("unbounded reduction cannot fail")
}

/// Checks that every S-polynomial of `basis` reduces to zero.
pub(crate) fn is_groebner(ring: &Ring, basis: &[Poly]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_poly(ring, &basis[i], &basis[j]);
            if !normal_form(ring, s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

pub(crate) fn cmp_keys(ring: &Ring, a: &[u16], b: &[u16]) -> Ordering {
    ring.key(a).cmp(&ring.key(b))
}

pub(crate) fn leading_coefficient_is_one(p: &Poly) -> bool {
    p.lead().map(|(_, _, c)| c.is_one()).unwrap_or(false)
}
