//! The commutative ring of trace polynomials with exact rational
//! coefficients.
//!
//! Variables are conjugacy classes `(w)` of free-group words up to inversion,
//! or the coordinate functions `t_{i1…im}` with strictly ascending indices.
//! A class whose canonical word is positive with ascending indices *is* the
//! coordinate `t_{i1…im}`, and is always stored in that form.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::words::{ConjClass, Word};

pub use parse::PolyParseError;

/// Exact rational coefficient.
pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TraceVar {
    /// `t_{i1…im}`, indices strictly ascending.
    T(Vec<u32>),
    /// `(w)` for a class that is not a coordinate.
    Class(ConjClass),
}

impl TraceVar {
    /// Coordinate variable; panics unless `indices` is nonempty and strictly
    /// ascending.
    pub fn t(indices: &[u32]) -> TraceVar {
        assert!(
            !indices.is_empty() && indices.windows(2).all(|w| w[0] < w[1]) && indices[0] >= 1,
            "coordinate indices must be strictly ascending: {indices:?}"
        );
        TraceVar::T(indices.to_vec())
    }

    /// The variable naming `class`, or `None` for the identity class.
    pub fn from_class(class: ConjClass) -> Option<TraceVar> {
        if class.is_identity() {
            return None;
        }
        match class.word().ascending_indices() {
            Some(idx) => Some(TraceVar::T(idx)),
            None => Some(TraceVar::Class(class)),
        }
    }

    /// A representative word (the ascending positive word for coordinates).
    pub fn word(&self) -> Word {
        match self {
            TraceVar::T(idx) => Word::positive(idx),
            TraceVar::Class(c) => c.word().clone(),
        }
    }

    pub fn class(&self) -> ConjClass {
        match self {
            TraceVar::T(idx) => ConjClass::of(&Word::positive(idx)),
            TraceVar::Class(c) => c.clone(),
        }
    }

    /// Number of letters of the representative word.
    pub fn length(&self) -> usize {
        match self {
            TraceVar::T(idx) => idx.len(),
            TraceVar::Class(c) => c.len(),
        }
    }

    pub fn is_coordinate(&self) -> bool {
        matches!(self, TraceVar::T(_))
    }

    pub fn max_index(&self) -> u32 {
        match self {
            TraceVar::T(idx) => *idx.last().unwrap(),
            TraceVar::Class(c) => c.word().max_index(),
        }
    }
}

impl Ord for TraceVar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TraceVar::T(a), TraceVar::T(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (TraceVar::T(_), TraceVar::Class(_)) => Ordering::Less,
            (TraceVar::Class(_), TraceVar::T(_)) => Ordering::Greater,
            (TraceVar::Class(a), TraceVar::Class(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for TraceVar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TraceVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceVar::T(idx) if idx.iter().all(|&i| i <= 9) => {
                write!(f, "t")?;
                for i in idx {
                    write!(f, "{i}")?;
                }
                Ok(())
            }
            TraceVar::T(idx) => {
                let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                write!(f, "t{{{}}}", parts.join(","))
            }
            TraceVar::Class(c) => write!(f, "({c})"),
        }
    }
}

/// A product of variables with positive exponents, sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(TraceVar, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: TraceVar) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary (variable, exponent) pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (TraceVar, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<TraceVar, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn factors(&self) -> &[(TraceVar, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &TraceVar) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn vars(&self) -> impl Iterator<Item = &TraceVar> {
        self.0.iter().map(|(v, _)| v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Element of the trace polynomial ring. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TracePolynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl TracePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(coeff(n))
    }

    pub fn term(c: Coeff, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TracePolynomial { terms }
    }

    pub fn var(v: TraceVar) -> Self {
        Self::term(Coeff::one(), Monomial::var(v))
    }

    /// `t_{indices}`.
    pub fn t(indices: &[u32]) -> Self {
        Self::var(TraceVar::t(indices))
    }

    /// The trace function of `w`: a single variable, or the constant 2 when
    /// `w` is trivial in the free group.
    pub fn class_var(w: &Word) -> Self {
        Self::from_class(ConjClass::of(w))
    }

    pub fn from_class(c: ConjClass) -> Self {
        match TraceVar::from_class(c) {
            Some(v) => Self::var(v),
            None => Self::int(2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&Monomial::one())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Every variable occurring, sorted and deduplicated.
    pub fn variables(&self) -> Vec<TraceVar> {
        let mut vs: Vec<TraceVar> = self.terms.keys().flat_map(|m| m.vars().cloned()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn max_index(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.vars().map(|v| v.max_index()))
            .max()
            .unwrap_or(0)
    }

    /// True when every variable is a coordinate `t_I`.
    pub fn is_in_t(&self) -> bool {
        self.terms.keys().all(|m| m.vars().all(|v| v.is_coordinate()))
    }

    /// True when every variable is a coordinate `t_I` with `|I| <= 3`.
    pub fn is_in_t0(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.vars().all(|v| matches!(v, TraceVar::T(i) if i.len() <= 3)))
    }

    pub fn has_inverse_letters(&self) -> bool {
        self.terms.keys().any(|m| {
            m.vars()
                .any(|v| matches!(v, TraceVar::Class(c) if c.word().inverse_count() > 0))
        })
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TracePolynomial {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TracePolynomial {
            terms: self.terms.iter().map(|(n, k)| (n.mul(m), k * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies the ring homomorphism sending each variable `v` to `image(v)`.
    /// `image` is called once per distinct variable.
    pub fn map_vars<F>(&self, mut image: F) -> Self
    where
        F: FnMut(&TraceVar) -> TracePolynomial,
    {
        let mut cache: HashMap<TraceVar, TracePolynomial> = HashMap::new();
        let mut powers: HashMap<(TraceVar, u32), TracePolynomial> = HashMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut prod = Self::constant(c.clone());
            for (v, e) in m.factors() {
                if !cache.contains_key(v) {
                    let img = image(v);
                    cache.insert(v.clone(), img);
                }
                let key = (v.clone(), *e);
                if !powers.contains_key(&key) {
                    let p = cache[v].pow(*e);
                    powers.insert(key.clone(), p);
                }
                prod = &prod * &powers[&key];
                if prod.is_zero() {
                    break;
                }
            }
            out += prod;
        }
        out
    }

    /// Replaces every generator `a_i` by `sub[i]` inside each variable
    /// (indices missing from `sub` are left alone) and expands.
    pub fn substitute_generators(&self, sub: &HashMap<u32, Word>) -> Self {
        self.map_vars(|v| {
            let w = v
                .word()
                .substitute(|i| sub.get(&i).cloned().unwrap_or_else(|| Word::gen(i)));
            Self::class_var(&w)
        })
    }

    /// Terms in display order: higher degree first, then by monomial.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Coeff)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| a.0.cmp(b.0)));
        ts
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<TracePolynomial>]) -> TracePolynomial {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = TracePolynomial::zero();
    for col in 0..k {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<TracePolynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &det(&minor);
        if col % 2 == 0 {
            acc += term;
        } else {
            acc -= &term;
        }
    }
    acc
}

impl fmt::Display for TracePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for TracePolynomial {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_poly(s)
    }
}

impl std::ops::AddAssign for TracePolynomial {
    fn add_assign(&mut self, rhs: TracePolynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl std::ops::AddAssign<&TracePolynomial> for TracePolynomial {
    fn add_assign(&mut self, rhs: &TracePolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&TracePolynomial> for TracePolynomial {
    fn sub_assign(&mut self, rhs: &TracePolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &TracePolynomial {
    type Output = TracePolynomial;
    fn add(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for TracePolynomial {
    type Output = TracePolynomial;
    fn add(mut self, rhs: TracePolynomial) -> TracePolynomial {
        self += rhs;
        self
    }
}

impl Sub for &TracePolynomial {
    type Output = TracePolynomial;
    fn sub(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for TracePolynomial {
    type Output = TracePolynomial;
    fn sub(mut self, rhs: TracePolynomial) -> TracePolynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &TracePolynomial {
    type Output = TracePolynomial;
    fn neg(self) -> TracePolynomial {
        TracePolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for TracePolynomial {
    type Output = TracePolynomial;
    fn neg(self) -> TracePolynomial {
        -&self
    }
}

impl Mul for &TracePolynomial {
    type Output = TracePolynomial;
    fn mul(self, rhs: &TracePolynomial) -> TracePolynomial {
        let mut out = TracePolynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Mul for TracePolynomial {
    type Output = TracePolynomial;
    fn mul(self, rhs: TracePolynomial) -> TracePolynomial {
        &self * &rhs
    }
}
