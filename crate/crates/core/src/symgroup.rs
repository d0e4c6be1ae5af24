//! Permutations of generator letters, Young tableaux and symmetrizers, and
//! their reading as trace polynomials through cycle notation.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::tracepoly::{coeff, det, Coeff, TracePolynomial};
use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("letter a{0} is used more than once")]
    LetterCollision(u32),
    #[error("permutations act on different letter sets")]
    MismatchedLetters,
    #[error("invalid tableau: {0}")]
    BadShape(String),
    #[error("a{0} does not occupy a removable corner box")]
    NotACorner(u32),
    #[error("m = {0} exceeds the default cap of 5; pass the large-m flag to allow it")]
    TooLarge(usize),
    #[error("expected {expected} letters, got {got}")]
    LetterCount { expected: usize, got: usize },
    #[error("coset decomposition check failed: {0}")]
    DecompositionMismatch(String),
}

/// Bijection on an explicit, sorted set of generator indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    letters: Vec<u32>,
    images: Vec<u32>,
}

fn distinct_sorted(letters: &[u32]) -> Result<Vec<u32>, SymError> {
    let mut seen = BTreeSet::new();
    for &l in letters {
        if !seen.insert(l) {
            return Err(SymError::LetterCollision(l));
        }
    }
    Ok(seen.into_iter().collect())
}

impl Permutation {
    pub fn identity(letters: &[u32]) -> Result<Self, SymError> {
        let letters = distinct_sorted(letters)?;
        Ok(Permutation {
            images: letters.clone(),
            letters,
        })
    }

    /// The permutation sending each cycle entry to the next one.
    pub fn from_cycles(letters: &[u32], cycles: &[&[u32]]) -> Result<Self, SymError> {
        let mut p = Self::identity(letters)?;
        let mut used = BTreeSet::new();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if !used.insert(a) {
                    return Err(SymError::LetterCollision(a));
                }
                let pos = p.position(a).ok_or(SymError::MismatchedLetters)?;
                p.images[pos] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(p)
    }

    pub fn transposition(letters: &[u32], a: u32, b: u32) -> Result<Self, SymError> {
        if a == b {
            Self::identity(letters)
        } else {
            Self::from_cycles(letters, &[&[a, b]])
        }
    }

    fn position(&self, a: u32) -> Option<usize> {
        self.letters.binary_search(&a).ok()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn apply(&self, a: u32) -> u32 {
        match self.position(a) {
            Some(k) => self.images[k],
            None => a,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.letters == self.images
    }

    /// `(self · other)(a) = self(other(a))`.
    pub fn mul(&self, other: &Permutation) -> Result<Permutation, SymError> {
        if self.letters != other.letters {
            return Err(SymError::MismatchedLetters);
        }
        Ok(Permutation {
            letters: self.letters.clone(),
            images: other.images.iter().map(|&b| self.apply(b)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = self.letters.clone();
        for (k, &b) in self.images.iter().enumerate() {
            images[self.position(b).expect("bijection")] = self.letters[k];
        }
        Permutation {
            letters: self.letters.clone(),
            images,
        }
    }

    /// Cycles including fixed points, each starting at its least letter.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.letters {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut a = self.apply(start);
            while a != start {
                cycle.push(a);
                seen.insert(a);
                a = self.apply(a);
            }
            out.push(cycle);
        }
        out
    }

    pub fn sgn(&self) -> i8 {
        let even = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Product over cycles of the trace of the positive word along the cycle.
    pub fn to_trace_poly(&self) -> TracePolynomial {
        self.cycles().iter().fold(TracePolynomial::one(), |acc, c| {
            &acc * &TracePolynomial::class_var(&Word::positive(c))
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        for c in self.cycles().into_iter().filter(|c| c.len() > 1) {
            let body: Vec<String> = c.iter().map(|a| format!("a{a}")).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

pub fn perm_mul(s: &Permutation, t: &Permutation) -> Result<Permutation, SymError> {
    s.mul(t)
}

pub fn sgn(s: &Permutation) -> i8 {
    s.sgn()
}

/// Finite formal combination of permutations of one letter set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupAlgebraElement {
    letters: Vec<u32>,
    terms: BTreeMap<Permutation, Coeff>,
}

impl GroupAlgebraElement {
    pub fn zero(letters: &[u32]) -> Result<Self, SymError> {
        Ok(GroupAlgebraElement {
            letters: distinct_sorted(letters)?,
            terms: BTreeMap::new(),
        })
    }

    pub fn from_perm(p: Permutation) -> Self {
        Self::from_terms(p.letters.clone(), [(p, Coeff::one())])
    }

    fn from_terms<I: IntoIterator<Item = (Permutation, Coeff)>>(letters: Vec<u32>, terms: I) -> Self {
        let mut out = GroupAlgebraElement {
            letters,
            terms: BTreeMap::new(),
        };
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    fn add_term(&mut self, p: Permutation, c: Coeff) {
        match self.terms.entry(p) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymError> {
        if self.letters != other.letters {
            return Err(SymError::MismatchedLetters);
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        Self::from_terms(self.letters.clone(), self.terms.iter().map(|(p, k)| (p.clone(), k * c)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SymError> {
        if self.letters != other.letters {
            return Err(SymError::MismatchedLetters);
        }
        let mut out = Self::from_terms(self.letters.clone(), []);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.mul(q)?, a * b);
            }
        }
        Ok(out)
    }

    /// Reads each permutation through its cycles and extends linearly.
    pub fn to_trace_poly(&self) -> TracePolynomial {
        let mut out = TracePolynomial::zero();
        for (p, c) in &self.terms {
            out += p.to_trace_poly().scale(c);
        }
        out
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &Coeff::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

pub fn algebra_mul(x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement, SymError> {
    x.mul(y)
}

pub fn cycles_to_trace_poly(x: &GroupAlgebraElement) -> TracePolynomial {
    x.to_trace_poly()
}

/// A Young tableau: rows of distinct letters with weakly decreasing lengths.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, SymError> {
        if rows.is_empty() || rows.iter().any(|r| r.is_empty()) {
            return Err(SymError::BadShape("rows must be nonempty".into()));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(SymError::BadShape("row lengths must weakly decrease".into()));
        }
        distinct_sorted(&rows.concat())?;
        Ok(Tableau { rows })
    }

    /// Fills the diagram of `shape` row by row with `letters`.
    pub fn canonical(shape: &[usize], letters: &[u32]) -> Result<Self, SymError> {
        let m: usize = shape.iter().sum();
        if letters.len() != m {
            return Err(SymError::LetterCount {
                expected: m,
                got: letters.len(),
            });
        }
        let mut rows = Vec::new();
        let mut k = 0;
        for &len in shape {
            rows.push(letters[k..k + len].to_vec());
            k += len;
        }
        Self::new(rows)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.rows[0].len())
            .map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect())
            .collect()
    }

    pub fn letters(&self) -> Vec<u32> {
        let mut l = self.rows.concat();
        l.sort_unstable();
        l
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// The tableau with the box holding `a` removed, if `a` ends both its row
    /// and its column.
    pub fn remove_corner(&self, a: u32) -> Result<Option<Tableau>, SymError> {
        let (r, c) = self
            .rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&x| x == a).map(|c| (r, c)))
            .ok_or(SymError::NotACorner(a))?;
        let row_end = c + 1 == self.rows[r].len();
        let col_end = self.rows.get(r + 1).is_none_or(|below| below.len() <= c);
        if !row_end || !col_end {
            return Err(SymError::NotACorner(a));
        }
        let mut rows = self.rows.clone();
        rows[r].pop();
        rows.retain(|row| !row.is_empty());
        if rows.is_empty() {
            Ok(None)
        } else {
            Ok(Some(Tableau { rows }))
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|a| format!("a{a}")).collect::<Vec<_>>().join(" "))
            .collect();
        f.write_str(&rows.join(" / "))
    }
}

/// All permutations of `items` (as image lists), in lexicographic order.
fn arrangements(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in arrangements(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// The subgroup of permutations of `letters` preserving each block.
fn block_stabilizer(letters: &[u32], blocks: &[Vec<u32>]) -> Vec<Permutation> {
    let mut acc = vec![Permutation::identity(letters).expect("distinct letters")];
    for block in blocks {
        let mut next = Vec::new();
        for p in &acc {
            for arr in arrangements(block) {
                let mut q = p.clone();
                for (src, dst) in block.iter().zip(&arr) {
                    let k = q.position(*src).expect("block letter");
                    q.images[k] = *dst;
                }
                next.push(q);
            }
        }
        acc = next;
    }
    acc.sort();
    acc
}

pub fn row_stabilizer(y: &Tableau) -> Vec<Permutation> {
    block_stabilizer(&y.letters(), &y.rows)
}

pub fn column_stabilizer(y: &Tableau) -> Vec<Permutation> {
    block_stabilizer(&y.letters(), &y.columns())
}

/// `(sum of P_Y) · (signed sum of Q_Y)`.
pub fn young_symmetrizer(y: &Tableau) -> GroupAlgebraElement {
    let letters = y.letters();
    let p = GroupAlgebraElement::from_terms(
        letters.clone(),
        row_stabilizer(y).into_iter().map(|s| (s, Coeff::one())),
    );
    let q = GroupAlgebraElement::from_terms(
        letters,
        column_stabilizer(y).into_iter().map(|t| {
            let s = t.sgn() as i64;
            (t, coeff(s))
        }),
    );
    p.mul(&q).expect("shared letter set")
}

/// Coset decompositions of the row and column stabilizers by transpositions
/// with a removable corner letter.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    pub corner: u32,
    /// `(representative, coset)` pairs for the row stabilizer.
    pub rows: Vec<(Permutation, Vec<Permutation>)>,
    pub cols: Vec<(Permutation, Vec<Permutation>)>,
}

fn embed(p: &Permutation, letters: &[u32]) -> Permutation {
    let mut q = Permutation::identity(letters).expect("distinct letters");
    for (k, &a) in q.letters.clone().iter().enumerate() {
        q.images[k] = p.apply(a);
    }
    q
}

fn decompose(
    letters: &[u32],
    corner: u32,
    partners: &[u32],
    sub: &[Permutation],
    full: &[Permutation],
    what: &str,
) -> Result<Vec<(Permutation, Vec<Permutation>)>, SymError> {
    let mut cosets = Vec::new();
    let mut union = BTreeSet::new();
    for &r in partners.iter().chain(std::iter::once(&corner)) {
        let rep = Permutation::transposition(letters, r, corner)?;
        let coset: Vec<Permutation> = sub.iter().map(|s| rep.mul(s)).collect::<Result<_, _>>()?;
        for c in &coset {
            if !union.insert(c.clone()) {
                return Err(SymError::DecompositionMismatch(format!("{what} cosets overlap at {c}")));
            }
        }
        cosets.push((rep, coset));
    }
    let full: BTreeSet<Permutation> = full.iter().cloned().collect();
    if union != full {
        return Err(SymError::DecompositionMismatch(format!(
            "{what} cosets cover {} of {} elements",
            union.len(),
            full.len()
        )));
    }
    if full.len() != (partners.len() + 1) * sub.len() {
        return Err(SymError::DecompositionMismatch(format!("{what} cardinality")));
    }
    Ok(cosets)
}

/// Splits `P_Y` and `Q_Y` into the cosets `(r a_m) · P_{Y'}` and
/// `(c a_m) · Q_{Y'}`, checking disjointness, cover and cardinality.
pub fn lemma3_decomposition(y: &Tableau, corner: u32) -> Result<CosetDecomposition, SymError> {
    let smaller = y.remove_corner(corner)?;
    let letters = y.letters();
    let (sub_rows, sub_cols) = match &smaller {
        Some(t) => (
            row_stabilizer(t).iter().map(|p| embed(p, &letters)).collect::<Vec<_>>(),
            column_stabilizer(t)
                .iter()
                .map(|p| embed(p, &letters))
                .collect::<Vec<_>>(),
        ),
        None => {
            let id = vec![Permutation::identity(&letters)?];
            (id.clone(), id)
        }
    };
    let row = y.rows.iter().find(|r| r.contains(&corner)).expect("corner located");
    let col = y
        .columns()
        .into_iter()
        .find(|c| c.contains(&corner))
        .expect("corner located");
    let row_partners: Vec<u32> = row.iter().copied().filter(|&a| a != corner).collect();
    let col_partners: Vec<u32> = col.iter().copied().filter(|&a| a != corner).collect();
    Ok(CosetDecomposition {
        corner,
        rows: decompose(&letters, corner, &row_partners, &sub_rows, &row_stabilizer(y), "row")?,
        cols: decompose(
            &letters,
            corner,
            &col_partners,
            &sub_cols,
            &column_stabilizer(y),
            "column",
        )?,
    })
}

/// Partitions of `m` with at least three parts, largest first part first.
pub fn tall_partitions(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    go(m, m, &mut Vec::new(), &mut all);
    all.into_iter().filter(|p| p.len() >= 3).collect()
}

pub const DEFAULT_MAX_M: usize = 5;

/// One symmetrizer per diagram with at least three rows, on the tableau
/// filled row by row with `letters`. Empty when `m < 3`.
pub fn procesi_generators(letters: &[u32], allow_large: bool) -> Result<Vec<(Tableau, GroupAlgebraElement)>, SymError> {
    let m = letters.len();
    distinct_sorted(letters)?;
    if m > DEFAULT_MAX_M && !allow_large {
        return Err(SymError::TooLarge(m));
    }
    tall_partitions(m)
        .iter()
        .map(|shape| {
            let y = Tableau::canonical(shape, letters)?;
            let s = young_symmetrizer(&y);
            Ok((y, s))
        })
        .collect()
}

fn class_of(a: u32, b: u32) -> TracePolynomial {
    TracePolynomial::class_var(&Word::positive(&[a, b]))
}

fn gen_trace(a: u32) -> TracePolynomial {
    TracePolynomial::class_var(&Word::gen(a))
}

/// Expanded `det(2(x_i y_j) - (x_i)(y_j))`.
pub fn lemma6_identity(x: [u32; 4], y: [u32; 4]) -> Result<TracePolynomial, SymError> {
    distinct_sorted(&[x.as_slice(), y.as_slice()].concat())?;
    let m: Vec<Vec<TracePolynomial>> = x
        .iter()
        .map(|&xi| {
            y.iter()
                .map(|&yj| TracePolynomial::int(2) * class_of(xi, yj) - gen_trace(xi) * gen_trace(yj))
                .collect()
        })
        .collect();
    Ok(det(&m))
}

/// `[(x1x2x3) - (x1x3x2)] · [2(y1y2y3) + (y1)(y2)(y3) - (y1)(y2y3) - (y2)(y1y3)
/// - (y3)(y1y2)]` minus the determinant with rows `(x_m), (x_m y_1..3)` and
/// `2, (y_1), (y_2), (y_3)`.
pub fn lemma7_identity(x: [u32; 3], y: [u32; 3]) -> Result<TracePolynomial, SymError> {
    distinct_sorted(&[x.as_slice(), y.as_slice()].concat())?;
    let w = |idx: &[u32]| TracePolynomial::class_var(&Word::positive(idx));
    let left = w(&[x[0], x[1], x[2]]) - w(&[x[0], x[2], x[1]]);
    let (y1, y2, y3) = (gen_trace(y[0]), gen_trace(y[1]), gen_trace(y[2]));
    let right = TracePolynomial::int(2) * w(&[y[0], y[1], y[2]]) + &y1 * &(&y2 * &y3)
        - &y1 * &class_of(y[1], y[2])
        - &y2 * &class_of(y[0], y[2])
        - &y3 * &class_of(y[0], y[1]);
    let mut rows: Vec<Vec<TracePolynomial>> = x
        .iter()
        .map(|&xm| {
            let mut row = vec![gen_trace(xm)];
            row.extend(y.iter().map(|&yj| class_of(xm, yj)));
            row
        })
        .collect();
    rows.push(vec![TracePolynomial::int(2), y1, y2, y3]);
    Ok(left * right - det(&rows))
}

/// Renames letters of a group algebra element through `sub` (a bijection
/// between letter sets).
pub fn relabel(x: &GroupAlgebraElement, sub: &HashMap<u32, u32>) -> Result<GroupAlgebraElement, SymError> {
    let map = |a: u32| sub.get(&a).copied().unwrap_or(a);
    let letters: Vec<u32> = distinct_sorted(&x.letters.iter().map(|&a| map(a)).collect::<Vec<_>>())?;
    let mut out = GroupAlgebraElement::from_terms(letters.clone(), []);
    for (p, c) in &x.terms {
        let mut q = Permutation::identity(&letters)?;
        for &a in &p.letters {
            let k = q.position(map(a)).expect("relabelled letter");
            q.images[k] = map(p.apply(a));
        }
        out.add_term(q, c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::triple_identity;

    fn fact(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn composition_convention() {
        let l = [1, 2, 3];
        let t12 = Permutation::from_cycles(&l, &[&[1, 2]]).unwrap();
        let t23 = Permutation::from_cycles(&l, &[&[2, 3]]).unwrap();
        assert!(t12.mul(&t12).unwrap().is_identity());
        let p = t12.mul(&t23).unwrap();
        // 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1
        assert_eq!(p, Permutation::from_cycles(&l, &[&[1, 2, 3]]).unwrap());
        assert_eq!(p.sgn(), 1);
        assert_eq!(t12.sgn(), -1);
        assert_eq!(p.mul(&p.inverse()).unwrap(), Permutation::identity(&l).unwrap());
        let other = Permutation::identity(&[1, 2]).unwrap();
        assert_eq!(p.mul(&other), Err(SymError::MismatchedLetters));
    }

    #[test]
    fn stabilizer_orders() {
        let y = Tableau::new(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8], vec![9], vec![10]]).unwrap();
        assert_eq!(row_stabilizer(&y).len(), 72);
        assert_eq!(column_stabilizer(&y).len(), fact(5) * fact(3) * fact(2));
        let row = Tableau::new(vec![vec![1, 2]]).unwrap();
        assert_eq!(row_stabilizer(&row).len(), 2);
        assert_eq!(column_stabilizer(&row).len(), 1);
        let col = Tableau::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(column_stabilizer(&col).len(), 6);
        assert_eq!(row_stabilizer(&col).len(), 1);
    }

    #[test]
    fn tableau_validation() {
        assert!(matches!(
            Tableau::new(vec![vec![1], vec![2, 3]]),
            Err(SymError::BadShape(_))
        ));
        assert_eq!(
            Tableau::new(vec![vec![1, 2], vec![2]]),
            Err(SymError::LetterCollision(2))
        );
        assert!(Tableau::new(vec![]).is_err());
    }

    #[test]
    fn symmetrizers() {
        let col = Tableau::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        let s = young_symmetrizer(&col);
        assert_eq!(s.num_terms(), 6);
        assert_eq!(
            s.to_trace_poly(),
            triple_identity(&Word::gen(1), &Word::gen(2), &Word::gen(3))
        );

        let single = young_symmetrizer(&Tableau::new(vec![vec![1]]).unwrap());
        assert_eq!(
            single,
            GroupAlgebraElement::from_perm(Permutation::identity(&[1]).unwrap())
        );

        // (1 + (a1 a2)) (1 - (a1 a3)) expands to four distinct permutations
        let hook = young_symmetrizer(&Tableau::new(vec![vec![1, 2], vec![3]]).unwrap());
        assert_eq!(hook.num_terms(), 4);
        let total: Coeff = hook.terms().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, coeff(0));
    }

    #[test]
    fn cycle_reading() {
        let l = [1, 2, 3];
        let id = Permutation::identity(&l).unwrap();
        assert_eq!(id.to_trace_poly(), "(a1)(a2)(a3)".parse().unwrap());
        let c = Permutation::from_cycles(&l, &[&[1, 2, 3]]).unwrap();
        assert_eq!(c.to_trace_poly(), "(a1 a2 a3)".parse().unwrap());
    }

    #[test]
    fn coset_decompositions() {
        let col = Tableau::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        let d = lemma3_decomposition(&col, 3).unwrap();
        assert_eq!(d.cols.len(), 3);
        assert!(d.cols.iter().all(|(_, c)| c.len() == 2));
        assert_eq!(d.rows.len(), 1);

        let single = Tableau::new(vec![vec![5]]).unwrap();
        let d = lemma3_decomposition(&single, 5).unwrap();
        assert_eq!((d.rows.len(), d.cols.len()), (1, 1));
        assert_eq!(d.rows[0].1.len(), 1);

        let square = Tableau::new(vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(lemma3_decomposition(&square, 2).unwrap_err(), SymError::NotACorner(2));
        assert_eq!(lemma3_decomposition(&square, 3).unwrap_err(), SymError::NotACorner(3));
        let d = lemma3_decomposition(&square, 4).unwrap();
        assert_eq!(d.rows.len(), 2);
        assert_eq!(d.cols.len(), 2);

        let big = Tableau::new(vec![vec![1, 2, 3], vec![4, 5], vec![6]]).unwrap();
        for corner in [3, 5, 6] {
            let d = lemma3_decomposition(&big, corner).unwrap();
            let rows: usize = d.rows.iter().map(|(_, c)| c.len()).sum();
            assert_eq!(rows, row_stabilizer(&big).len());
        }
    }

    #[test]
    fn generator_counts() {
        assert!(procesi_generators(&[1, 2], false).unwrap().is_empty());
        assert_eq!(procesi_generators(&[1, 2, 3], false).unwrap().len(), 1);
        let four = procesi_generators(&[1, 2, 3, 4], false).unwrap();
        assert_eq!(
            four.iter().map(|(y, _)| y.shape()).collect::<Vec<_>>(),
            vec![vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        assert_eq!(procesi_generators(&[1, 2, 3, 4, 5], false).unwrap().len(), 4);
        assert_eq!(
            procesi_generators(&[1, 2, 3, 4, 5, 6], false).unwrap_err(),
            SymError::TooLarge(6)
        );
        assert_eq!(procesi_generators(&[1, 2, 3, 4, 5, 6], true).unwrap().len(), 7);
    }

    #[test]
    fn letter_collisions() {
        assert_eq!(
            lemma6_identity([1, 2, 3, 4], [5, 6, 7, 1]),
            Err(SymError::LetterCollision(1))
        );
        assert_eq!(lemma7_identity([1, 2, 3], [3, 4, 5]), Err(SymError::LetterCollision(3)));
    }

    #[test]
    fn gram_determinant_single_product() {
        // the diagonal product contributes +16 (x1y1)(x2y2)(x3y3)(x4y4)
        let p = lemma6_identity([1, 2, 3, 4], [5, 6, 7, 8]).unwrap();
        let diag: TracePolynomial = "(a1 a5)(a2 a6)(a3 a7)(a4 a8)".parse().unwrap();
        let (m, _) = diag.terms().next().unwrap();
        assert_eq!(p.coefficient(m), coeff(16));
        // an odd permutation term: -(x1y2)(x2y1)(x3y3)(x4y4)·16
        let swap: TracePolynomial = "(a1 a6)(a2 a5)(a3 a7)(a4 a8)".parse().unwrap();
        let (m, _) = swap.terms().next().unwrap();
        assert_eq!(p.coefficient(m), coeff(-16));
    }

    #[test]
    fn relabelling() {
        let y = Tableau::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        let s = young_symmetrizer(&y);
        let sub: HashMap<u32, u32> = [(1, 4), (2, 6), (3, 5)].into_iter().collect();
        let r = relabel(&s, &sub).unwrap();
        assert_eq!(r.letters(), &[4, 5, 6]);
        assert_eq!(
            r.to_trace_poly(),
            triple_identity(&Word::gen(4), &Word::gen(5), &Word::gen(6))
        );
    }
}
