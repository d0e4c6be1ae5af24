//! Defining ideals of SL(2,C) character varieties in the coordinates
//! `t_I, |I| <= 3`, manifold ideals from presentations, and Gröbner-basis
//! queries over them.

pub mod groebner;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::reduce::psi_normal_form;
use crate::tracepoly::{det, TracePolynomial, TraceVar};
use crate::words::{Word, WordParseError};

pub use groebner::{GroebnerError, Limits, MonomialOrder, DEFAULT_BUDGET};
use groebner::{Poly, Ring};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("relator {0} is trivial after cyclic reduction")]
    TrivialRelator(String),
    #[error("relator {word} uses generator a{index} but only {n} generators are declared")]
    IndexOutOfRange { word: String, index: u32, n: u32 },
    #[error("missing `generators:` line")]
    MissingGenerators,
}

#[derive(Debug, Error)]
pub enum CharringError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("variable {var} is outside the coordinate alphabet for {n} generators")]
    ForeignVariable { var: String, n: u32 },
}

/// A finite presentation `<a1..an | w1, w2, ...>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    n: u32,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(n: u32, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut out = Vec::with_capacity(relators.len());
        for w in relators {
            let r = w.cyclic_reduction();
            if r.is_empty() {
                return Err(PresentationError::TrivialRelator(w.to_string()));
            }
            if r.max_index() > n {
                return Err(PresentationError::IndexOutOfRange {
                    word: w.to_string(),
                    index: r.max_index(),
                    n,
                });
            }
            out.push(r);
        }
        Ok(Presentation { n, relators: out })
    }

    /// The free group on `n` generators.
    pub fn free(n: u32) -> Self {
        Presentation { n, relators: vec![] }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.n)?;
        for r in &self.relators {
            writeln!(f, "relator: {r}")?;
        }
        Ok(())
    }
}

impl FromStr for Presentation {
    type Err = PresentationError;

    /// Lines `generators: <n>` and `relator: <word>`; `#` starts a comment.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut n = None;
        let mut relators = Vec::new();
        for (k, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| PresentationError::Syntax { line: k + 1, msg };
            let Some((key, value)) = line.split_once(':') else {
                return Err(syntax(format!("expected `key: value`, got `{line}`")));
            };
            let value = value.trim();
            match key.trim() {
                "generators" => {
                    let v: u32 = value
                        .parse()
                        .map_err(|_| syntax(format!("bad generator count `{value}`")))?;
                    n = Some(v);
                }
                "relator" => {
                    let w: Word = value.parse().map_err(|e: WordParseError| match e {
                        WordParseError::Empty => PresentationError::TrivialRelator(value.to_string()),
                        other => syntax(other.to_string()),
                    })?;
                    relators.push(w);
                }
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        Presentation::new(n.ok_or(PresentationError::MissingGenerators)?, relators)
    }
}

/// The coordinates `t_I` with `|I| <= 3` over `n` generators, largest first:
/// longer subscripts first, then lexicographically smaller tuples first.
pub fn t0_alphabet(n: u32) -> Vec<TraceVar> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(TraceVar::t(&[i, j, k]));
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(TraceVar::t(&[i, j]));
        }
    }
    for i in 1..=n {
        out.push(TraceVar::t(&[i]));
    }
    out
}

/// A polynomial ideal over the alphabet [`t0_alphabet`]`(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub n: u32,
    pub variables: Vec<TraceVar>,
    pub generators: Vec<TracePolynomial>,
}

impl Ideal {
    pub fn new(n: u32, generators: Vec<TracePolynomial>) -> Result<Self, CharringError> {
        let variables = t0_alphabet(n);
        for g in &generators {
            check_alphabet(g, n)?;
        }
        Ok(Ideal {
            n,
            variables,
            generators,
        })
    }
}

fn check_alphabet(p: &TracePolynomial, n: u32) -> Result<(), CharringError> {
    match p
        .variables()
        .into_iter()
        .find(|v| !(v.is_coordinate() && v.length() <= 3 && v.max_index() <= n))
    {
        Some(v) => Err(CharringError::ForeignVariable { var: v.to_string(), n }),
        None => Ok(()),
    }
}

fn t(idx: &[u32]) -> TracePolynomial {
    let mut s = idx.to_vec();
    s.sort_unstable();
    TracePolynomial::t(&s)
}

/// `M_ii = t_i^2 - 4`, `M_ij = 2 t_ij - t_i t_j`.
pub fn m_entry(i: u32, j: u32) -> TracePolynomial {
    if i == j {
        t(&[i]).pow(2) - TracePolynomial::int(4)
    } else {
        TracePolynomial::int(2) * t(&[i, j]) - t(&[i]) * t(&[j])
    }
}

/// `t_{mi}` with the convention `t_{mm} = t_m^2 - 2`.
fn t_pair(m: u32, i: u32) -> TracePolynomial {
    if m == i {
        t(&[m]).pow(2) - TracePolynomial::int(2)
    } else {
        t(&[m, i])
    }
}

/// `q1` for a triple of distinct indices.
pub fn q1(i: u32, j: u32, k: u32) -> TracePolynomial {
    let (ti, tj, tk) = (t(&[i]), t(&[j]), t(&[k]));
    let (tij, tik, tjk) = (t(&[i, j]), t(&[i, k]), t(&[j, k]));
    let tijk = t(&[i, j, k]);
    ti.pow(2)
        + tj.pow(2)
        + tk.pow(2)
        + tij.pow(2)
        + tik.pow(2)
        + tjk.pow(2)
        + tijk.pow(2)
        + &tij * &(&tik * &tjk)
        + &tijk * &(&ti * &(&tj * &tk))
        - &tijk * &(&ti * &tjk)
        - &tijk * &(&tj * &tik)
        - &tijk * &(&tk * &tij)
        - &ti * &(&tj * &tij)
        - &ti * &(&tk * &tik)
        - &tj * &(&tk * &tjk)
        - TracePolynomial::int(4)
}

fn m_det(rows: [u32; 4], cols: [u32; 4]) -> TracePolynomial {
    let m: Vec<Vec<TracePolynomial>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| m_entry(r, c)).collect())
        .collect();
    det(&m)
}

/// `q2` for `2 < i < j`.
pub fn q2(i: u32, j: u32) -> TracePolynomial {
    m_det([1, 2, i, j], [1, 2, i, j])
}

/// `q3` for `3 < i < j`.
pub fn q3(i: u32, j: u32) -> TracePolynomial {
    m_det([1, 2, 3, j], [1, 2, 3, i])
}

/// `q4` for `i < j < k`, with `t_123 - t_132` rewritten in the coordinates.
pub fn q4(i: u32, j: u32, k: u32) -> TracePolynomial {
    let cubic = |a: u32, b: u32, c: u32| {
        let (ta, tb, tc) = (t(&[a]), t(&[b]), t(&[c]));
        TracePolynomial::int(2) * t(&[a, b, c]) + &ta * &(&tb * &tc)
            - &ta * &t(&[b, c])
            - &tb * &t(&[a, c])
            - &tc * &t(&[a, b])
    };
    let mut rows: Vec<Vec<TracePolynomial>> = (1..=3)
        .map(|m| vec![t(&[m]), t_pair(m, i), t_pair(m, j), t_pair(m, k)])
        .collect();
    rows.push(vec![TracePolynomial::int(2), t(&[i]), t(&[j]), t(&[k])]);
    cubic(1, 2, 3) * cubic(i, j, k) - det(&rows)
}

/// Generators of the handlebody ideal over `n` generators, in the order
/// q1 (per triple), q2, q3, q4.
pub fn gm_generators(n: u32) -> Vec<TracePolynomial> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(q1(i, j, k));
            }
        }
    }
    for i in 3..=n {
        for j in i + 1..=n {
            out.push(q2(i, j));
        }
    }
    for i in 4..=n {
        for j in i + 1..=n {
            out.push(q3(i, j));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(q4(i, j, k));
            }
        }
    }
    out
}

/// Positive ascending words `a_I` with `|I| <= 2`.
fn short_coordinate_words(n: u32) -> Vec<Word> {
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(Word::positive(&[i]));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Word::positive(&[i, j]));
        }
    }
    out
}

/// For each relator `w`: `(w) - 2` and `(w a_I) - (a_I)` for `|I| = 1, 2`,
/// reduced into the coordinates.
pub fn relator_polynomials(p: &Presentation) -> Vec<TracePolynomial> {
    let gammas = short_coordinate_words(p.n);
    let mut out = Vec::new();
    for w in &p.relators {
        out.push(psi_normal_form(
            &(TracePolynomial::class_var(w) - TracePolynomial::int(2)),
        ));
        for g in &gammas {
            let poly = TracePolynomial::class_var(&w.concat(g)) - TracePolynomial::class_var(g);
            out.push(psi_normal_form(&poly));
        }
    }
    out
}

/// The handlebody ideal for `n` generators.
pub fn handlebody_ideal(n: u32) -> Ideal {
    Ideal::new(n, gm_generators(n)).expect("generators use the coordinate alphabet")
}

/// Handlebody generators together with the relator polynomials.
pub fn manifold_ideal(p: &Presentation) -> Ideal {
    let mut gens = gm_generators(p.n);
    gens.extend(relator_polynomials(p).into_iter().filter(|g| !g.is_zero()));
    Ideal::new(p.n, gens).expect("generators use the coordinate alphabet")
}

/// A reduced Gröbner basis together with its ring.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    n: u32,
    polys: Vec<Poly>,
    basis: Vec<TracePolynomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn variables(&self) -> &[TraceVar] {
        &self.ring.vars
    }

    /// Basis elements, smallest leading monomial first.
    pub fn basis(&self) -> &[TracePolynomial] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.polys
            .iter()
            .any(|p| p.lead_exps().map(|e| e.iter().all(|&x| x == 0)).unwrap_or(false))
    }

    pub fn normal_form_mod(&self, p: &TracePolynomial) -> Result<TracePolynomial, CharringError> {
        check_alphabet(p, self.n)?;
        let poly = self.ring.encode(p)?;
        Ok(self.ring.decode(&groebner::normal_form(&self.ring, poly, &self.polys)))
    }

    pub fn member(&self, p: &TracePolynomial) -> Result<bool, CharringError> {
        Ok(self.normal_form_mod(p)?.is_zero())
    }

    /// Whether every S-polynomial of the basis reduces to zero and the basis
    /// is reduced and monic.
    pub fn check(&self) -> bool {
        groebner::is_groebner(&self.ring, &self.polys)
            && self.polys.iter().all(groebner::leading_coefficient_is_one)
            && self
                .polys
                .windows(2)
                .all(|w| groebner::cmp_keys(&self.ring, w[0].lead_exps().unwrap(), w[1].lead_exps().unwrap()).is_lt())
    }

    pub fn leading_exponents(&self) -> Vec<Vec<u16>> {
        self.polys
            .iter()
            .map(|p| p.lead_exps().expect("nonzero").to_vec())
            .collect()
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.basis {
            writeln!(f, "{b}")?;
        }
        Ok(())
    }
}

pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis, CharringError> {
    buchberger_with(ideal, order, &Limits::default())
}

pub fn buchberger_with(ideal: &Ideal, order: MonomialOrder, limits: &Limits) -> Result<GroebnerBasis, CharringError> {
    let ring = Ring::new(ideal.variables.clone(), order);
    let gens = ideal
        .generators
        .iter()
        .map(|g| ring.encode(g))
        .collect::<Result<Vec<_>, _>>()?;
    let polys = groebner::groebner(&ring, gens, limits)?;
    let basis = polys.iter().map(|p| ring.decode(p)).collect();
    Ok(GroebnerBasis {
        ring,
        n: ideal.n,
        polys,
        basis,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

impl fmt::Display for QuotientDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientDimension::Finite(d) => write!(f, "{d}"),
            QuotientDimension::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// Number of standard monomials of a reduced basis.
pub fn quotient_dimension(g: &GroebnerBasis) -> QuotientDimension {
    let leads = g.leading_exponents();
    let nv = g.ring.vars.len();
    if leads.iter().any(|e| e.iter().all(|&x| x == 0)) {
        return QuotientDimension::Finite(0);
    }
    let mut bound = vec![0u16; nv];
    for v in 0..nv {
        let pure = leads
            .iter()
            .filter(|e| e.iter().enumerate().all(|(i, &x)| i == v || x == 0))
            .map(|e| e[v])
            .min();
        match pure {
            Some(d) => bound[v] = d,
            None => return QuotientDimension::Infinite,
        }
    }
    // standard monomials form an order ideal, so divisible branches are pruned
    fn count(v: usize, cur: &mut Vec<u16>, bound: &[u16], leads: &[Vec<u16>]) -> u64 {
        if v == bound.len() {
            return 1;
        }
        let mut total = 0;
        for d in 0..bound[v] {
            cur[v] = d;
            let blocked = leads.iter().any(|e| {
                e.iter()
                    .zip(cur.iter())
                    .enumerate()
                    .all(|(i, (x, y))| if i <= v { x <= y } else { *x == 0 })
            });
            if blocked {
                break;
            }
            total += count(v + 1, cur, bound, leads);
        }
        cur[v] = 0;
        total
    }
    QuotientDimension::Finite(count(0, &mut vec![0; nv], &bound, &leads))
}

/// Sound test that `p` vanishes in the character ring of `pres`: the
/// coordinate normal form of `p` lies in the manifold ideal.
pub fn certifies_psi_zero(p: &TracePolynomial, pres: &Presentation) -> Result<bool, CharringError> {
    certifies_psi_zero_with(p, pres, &Limits::default())
}

pub fn certifies_psi_zero_with(
    p: &TracePolynomial,
    pres: &Presentation,
    limits: &Limits,
) -> Result<bool, CharringError> {
    let q = psi_normal_form(p);
    if q.is_zero() {
        return Ok(true);
    }
    if check_alphabet(&q, pres.n).is_err() {
        return Ok(false);
    }
    let g = basis_cached(pres, limits)?;
    g.member(&q)
}

fn basis_cached(pres: &Presentation, limits: &Limits) -> Result<std::sync::Arc<GroebnerBasis>, CharringError> {
    use std::sync::{Arc, LazyLock, Mutex};
    static CACHE: LazyLock<Mutex<HashMap<Presentation, Arc<GroebnerBasis>>>> =
        LazyLock::new(|| Mutex::new(HashMap::new()));
    if let Some(g) = CACHE.lock().expect("cache lock").get(pres) {
        return Ok(g.clone());
    }
    let g = Arc::new(buchberger_with(&manifold_ideal(pres), MonomialOrder::Grevlex, limits)?);
    CACHE.lock().expect("cache lock").insert(pres.clone(), g.clone());
    Ok(g)
}

/// Membership in the handlebody ideal for the generators occurring in `q`
/// (at least three), using a cached basis.
pub fn handlebody_member(q: &TracePolynomial) -> Result<bool, CharringError> {
    if q.is_zero() {
        return Ok(true);
    }
    let n = q.max_index().max(3);
    let g = basis_cached(&Presentation::free(n), &Limits::default())?;
    g.member(q)
}
