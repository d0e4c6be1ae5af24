//! Exact 2x2 matrix representations of free groups and evaluation of words
//! and trace polynomials on them.
//!
//! Everything is exact rational arithmetic, so identities are checked by
//! testing for exact zero.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::tracepoly::{coeff, Coeff, TracePolynomial, TraceVar};
use crate::words::Word;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("generator a{0} has no matrix assigned")]
    Unassigned(u32),
    #[error("matrix for a{0} is singular but its inverse is required")]
    Singular(u32),
    #[error("matrix for a{0} does not have determinant 1")]
    NotSl2(u32),
    #[error("arbitrary-matrix verification needs an inverse-free polynomial")]
    InversesInAnyMode,
    #[error("coordinate {0} has no value")]
    MissingCoordinate(String),
    #[error("representation syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

/// `(a b / c d)`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Matrix2 {
    pub a: Coeff,
    pub b: Coeff,
    pub c: Coeff,
    pub d: Coeff,
}

impl Matrix2 {
    pub fn new(a: Coeff, b: Coeff, c: Coeff, d: Coeff) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Matrix2::new(coeff(a), coeff(b), coeff(c), coeff(d))
    }

    pub fn identity() -> Self {
        Matrix2::from_ints(1, 0, 0, 1)
    }

    /// `(1 n / 0 1)`
    pub fn upper_shear(n: i64) -> Self {
        Matrix2::from_ints(1, n, 0, 1)
    }

    /// `(1 0 / m 1)`
    pub fn lower_shear(m: i64) -> Self {
        Matrix2::from_ints(1, 0, m, 1)
    }

    pub fn det(&self) -> Coeff {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Coeff {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Adjugate over determinant; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix2> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(Matrix2 {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix2::identity()
    }

    pub fn scale(&self, s: &Coeff) -> Matrix2 {
        Matrix2::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Whether a representation must land in SL(2) or may use arbitrary matrices.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Mode {
    Sl2,
    Any,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sl2" => Ok(Mode::Sl2),
            "any" => Ok(Mode::Any),
            _ => Err(format!("unknown mode `{s}` (expected sl2 or any)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sl2 => "sl2",
            Mode::Any => "any",
        })
    }
}

/// Assignment of a matrix to each generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    mats: BTreeMap<u32, Matrix2>,
    mode: Mode,
}

impl Representation {
    pub fn new(mode: Mode, mats: BTreeMap<u32, Matrix2>) -> Result<Self, EvalError> {
        if mode == Mode::Sl2 {
            if let Some((&i, _)) = mats.iter().find(|(_, m)| !m.det().is_one()) {
                return Err(EvalError::NotSl2(i));
            }
        }
        Ok(Representation { mats, mode })
    }

    /// SL(2) when every determinant is 1, otherwise arbitrary.
    pub fn infer(mats: BTreeMap<u32, Matrix2>) -> Self {
        let mode = if mats.values().all(|m| m.det().is_one()) {
            Mode::Sl2
        } else {
            Mode::Any
        };
        Representation { mats, mode }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn get(&self, index: u32) -> Option<&Matrix2> {
        self.mats.get(&index)
    }

    pub fn matrices(&self) -> &BTreeMap<u32, Matrix2> {
        &self.mats
    }

    /// Random representation of generators `1..=n`.
    pub fn random<R: Rng>(rng: &mut R, n: u32, mode: Mode, size_bound: i64) -> Self {
        let mats = (1..=n)
            .map(|i| {
                let m = match mode {
                    Mode::Sl2 => random_sl2(rng, size_bound),
                    Mode::Any => random_any(rng, size_bound, false),
                };
                (i, m)
            })
            .collect();
        Representation { mats, mode }
    }

    /// Reproducible random representation for trial `stream` under `seed`.
    pub fn seeded(seed: u64, stream: u64, n: u32, mode: Mode, size_bound: i64) -> Self {
        let mut rng = trial_rng(seed, stream);
        Self::random(&mut rng, n, mode, size_bound)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in &self.mats {
            writeln!(f, "a{i} = {m}")?;
        }
        Ok(())
    }
}

impl FromStr for Representation {
    type Err = EvalError;

    /// Lines of the form `a<k> = [[p,q],[r,s]]`; `#` starts a comment.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut mats = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: &str| EvalError::Syntax {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| syntax("expected `a<k> = [[p,q],[r,s]]`"))?;
            let index: u32 = lhs
                .trim()
                .strip_prefix('a')
                .and_then(|d| d.parse().ok())
                .filter(|&i| i >= 1)
                .ok_or_else(|| syntax("bad generator name"))?;
            let cleaned: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
            let inner = cleaned
                .strip_prefix("[[")
                .and_then(|s| s.strip_suffix("]]"))
                .ok_or_else(|| syntax("matrix must look like [[p,q],[r,s]]"))?;
            let entries: Vec<&str> = inner.split("],[").flat_map(|row| row.split(',')).collect();
            if entries.len() != 4 {
                return Err(syntax("matrix needs exactly four entries"));
            }
            let vals: Vec<Coeff> = entries
                .iter()
                .map(|e| parse_rational(e).ok_or_else(|| syntax("bad rational entry")))
                .collect::<Result<_, _>>()?;
            let [a, b, c, d]: [Coeff; 4] = vals.try_into().expect("four entries");
            if mats.insert(index, Matrix2::new(a, b, c, d)).is_some() {
                return Err(syntax("generator assigned twice"));
            }
        }
        Ok(Representation::infer(mats))
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<Coeff> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (n, d) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() || n < BigInt::zero() {
        return None;
    }
    let v = Coeff::new(n, d);
    Some(if neg { -v } else { v })
}

/// Seeded generator for one trial; distinct streams are independent.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Random element of SL(2,Z): a product of 2 to 6 alternating elementary
/// shears with nonzero integer parameters of absolute value at most
/// `size_bound`.
pub fn random_sl2<R: Rng>(rng: &mut R, size_bound: i64) -> Matrix2 {
    assert!(size_bound >= 1);
    let count = rng.gen_range(2..=6);
    let mut upper = rng.gen_bool(0.5);
    let mut m = Matrix2::identity();
    for _ in 0..count {
        let mut k = rng.gen_range(1..=size_bound);
        if rng.gen_bool(0.5) {
            k = -k;
        }
        let s = if upper {
            Matrix2::upper_shear(k)
        } else {
            Matrix2::lower_shear(k)
        };
        m = m.mul(&s);
        upper = !upper;
    }
    m
}

/// Random integer matrix with entries in `[-size_bound, size_bound]`;
/// singular draws are rejected only when `invertible` is set.
pub fn random_any<R: Rng>(rng: &mut R, size_bound: i64, invertible: bool) -> Matrix2 {
    loop {
        let mut e = || rng.gen_range(-size_bound..=size_bound);
        let m = Matrix2::from_ints(e(), e(), e(), e());
        if !invertible || !m.det().is_zero() {
            return m;
        }
    }
}

/// Ordered product of the matrices of `w`'s letters.
pub fn eval_word(rep: &Representation, w: &Word) -> Result<Matrix2, EvalError> {
    let mut acc = Matrix2::identity();
    let mut inverses: HashMap<u32, Matrix2> = HashMap::new();
    for l in w.letters() {
        let m = rep.get(l.index()).ok_or(EvalError::Unassigned(l.index()))?;
        if l.is_inverse() {
            let inv = match inverses.entry(l.index()) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(m.inverse().ok_or(EvalError::Singular(l.index()))?)
                }
            };
            acc = acc.mul(inv);
        } else {
            acc = acc.mul(m);
        }
    }
    Ok(acc)
}

/// Value of `p` with every variable replaced by the trace of its word.
pub fn eval_poly(rep: &Representation, p: &TracePolynomial) -> Result<Coeff, EvalError> {
    let mut traces: HashMap<&TraceVar, Coeff> = HashMap::new();
    for (m, _) in p.terms() {
        for v in m.vars() {
            if !traces.contains_key(v) {
                traces.insert(v, eval_word(rep, &v.word())?.trace());
            }
        }
    }
    Ok(eval_with(p, |v| traces[v].clone()))
}

/// Value of `p` at a point given directly in coordinates.
pub fn eval_coordinates(p: &TracePolynomial, point: &BTreeMap<TraceVar, Coeff>) -> Result<Coeff, EvalError> {
    for v in p.variables() {
        if !point.contains_key(&v) {
            return Err(EvalError::MissingCoordinate(v.to_string()));
        }
    }
    Ok(eval_with(p, |v| point[v].clone()))
}

fn eval_with<F: Fn(&TraceVar) -> Coeff>(p: &TracePolynomial, value: F) -> Coeff {
    let mut total = Coeff::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, e) in m.factors() {
            t *= num_traits::pow(value(v), *e as usize);
        }
        total += t;
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: u64,
    pub representation: Representation,
    pub value: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: u64,
    pub mode: Mode,
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Default entry bound used by [`verify_identity`].
pub const DEFAULT_SIZE_BOUND: i64 = 3;

/// Evaluates `p` on `trials` seeded random representations and reports the
/// first (lowest trial index) nonzero value.
pub fn verify_identity(p: &TracePolynomial, trials: u64, seed: u64, mode: Mode) -> Result<VerifyReport, EvalError> {
    if mode == Mode::Any && p.has_inverse_letters() {
        return Err(EvalError::InversesInAnyMode);
    }
    let n = p.max_index().max(1);
    let results: Vec<Result<Option<Counterexample>, EvalError>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let rep = Representation::seeded(seed, trial, n, mode, DEFAULT_SIZE_BOUND);
            let value = eval_poly(&rep, p)?;
            Ok((!value.is_zero()).then_some(Counterexample {
                trial,
                representation: rep,
                value,
            }))
        })
        .collect();
    let mut counterexample = None;
    for r in results {
        if let Some(c) = r? {
            counterexample = Some(c);
            break;
        }
    }
    Ok(VerifyReport {
        seed,
        trials,
        mode,
        counterexample,
    })
}

/// Dense 4x4 rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix4(pub [[Coeff; 4]; 4]);

impl Matrix4 {
    pub fn from_fn<F: FnMut(usize, usize) -> Coeff>(mut f: F) -> Self {
        Matrix4(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Matrix4::from_fn(|i, j| coeff(rows[i][j]))
    }

    pub fn identity() -> Self {
        Matrix4::from_fn(|i, j| if i == j { Coeff::one() } else { Coeff::zero() })
    }

    pub fn mul(&self, o: &Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| (0..4).map(|k| &self.0[i][k] * &o.0[k][j]).sum())
    }

    pub fn transpose(&self) -> Matrix4 {
        Matrix4::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn sub(&self, o: &Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| &self.0[i][j] - &o.0[i][j])
    }

    pub fn entry(&self, i: usize, j: usize) -> &Coeff {
        &self.0[i][j]
    }
}

/// Rows `(α_i, β_i, γ_i, δ_i)` of the four matrices.
pub fn m4_of(ms: &[Matrix2; 4]) -> Matrix4 {
    Matrix4::from_fn(|i, j| {
        let m = &ms[i];
        match j {
            0 => m.a.clone(),
            1 => m.b.clone(),
            2 => m.c.clone(),
            _ => m.d.clone(),
        }
    })
}

/// Swaps the middle coordinates: `M(A) J M(B)^t` is the matrix of `tr(A_i B_j)`.
pub fn j_const() -> Matrix4 {
    Matrix4::from_ints([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
}

pub fn jstar_const() -> Matrix4 {
    Matrix4::from_ints([[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]])
}

/// Determinant by cofactor expansion along the first row.
pub fn det4(m: &Matrix4) -> Coeff {
    let rows: Vec<Vec<Coeff>> = m.0.iter().map(|r| r.to_vec()).collect();
    det_cofactor(&rows)
}

fn det_cofactor(m: &[Vec<Coeff>]) -> Coeff {
    match m.len() {
        0 => Coeff::one(),
        1 => m[0][0].clone(),
        n => {
            let mut total = Coeff::zero();
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Coeff>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][col] * det_cofactor(&minor);
                if col % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn shear_pair() -> Representation {
        let mut mats = BTreeMap::new();
        mats.insert(1, Matrix2::upper_shear(1));
        mats.insert(2, Matrix2::lower_shear(1));
        Representation::new(Mode::Sl2, mats).unwrap()
    }

    #[test]
    fn random_sl2_has_unit_determinant_and_is_reproducible() {
        let a = random_sl2(&mut trial_rng(11, 0), 3);
        let b = random_sl2(&mut trial_rng(11, 0), 3);
        assert_eq!(a, b);
        for s in 0..50 {
            assert!(random_sl2(&mut trial_rng(5, s), 3).det().is_one());
        }
        assert_eq!(Matrix2::upper_shear(1), Matrix2::from_ints(1, 1, 0, 1));
        assert_eq!(
            Matrix2::upper_shear(1).mul(&Matrix2::lower_shear(1)),
            Matrix2::from_ints(2, 1, 1, 1)
        );
    }

    #[test]
    fn eval_word_examples() {
        let rep = shear_pair();
        assert_eq!(eval_word(&rep, &w("a1 a1")).unwrap(), Matrix2::from_ints(1, 2, 0, 1));
        assert!(eval_word(&rep, &Word::identity()).unwrap().is_identity());
        let m = eval_word(&rep, &w("a1 a2")).unwrap();
        assert_eq!(m, Matrix2::from_ints(2, 1, 1, 1));
        assert_eq!(m.trace(), coeff(3));
        assert_eq!(eval_word(&rep, &w("a3")), Err(EvalError::Unassigned(3)));
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let mut mats = BTreeMap::new();
        mats.insert(1, Matrix2::from_ints(1, 1, 1, 1));
        let rep = Representation::new(Mode::Any, mats).unwrap();
        assert_eq!(eval_word(&rep, &w("a1^-1")), Err(EvalError::Singular(1)));
        assert!(eval_word(&rep, &w("a1 a1")).is_ok());
    }

    #[test]
    fn eval_poly_examples() {
        let rep = shear_pair();
        let fundamental: TracePolynomial = "(a1 a2) + (a1 a2^-1) - (a1)(a2)".parse().unwrap();
        assert!(eval_poly(&rep, &fundamental).unwrap().is_zero());
        assert_eq!(eval_poly(&rep, &TracePolynomial::int(7)).unwrap(), coeff(7));
        let sq: TracePolynomial = "t1^2 - 2".parse().unwrap();
        assert_eq!(eval_poly(&rep, &sq).unwrap(), coeff(2));
        assert_eq!(eval_word(&rep, &w("a1 a1")).unwrap().trace(), coeff(2));
    }

    #[test]
    fn verify_identity_reports() {
        let ex1: TracePolynomial = "(a1)(a2)(a3) - (a1 a2)(a3) - (a1 a3)(a2) - (a2 a3)(a1) + (a1 a2 a3) + (a1 a3 a2)"
            .parse()
            .unwrap();
        assert!(verify_identity(&ex1, 50, 1, Mode::Sl2).unwrap().passed());
        assert!(verify_identity(&ex1, 50, 1, Mode::Any).unwrap().passed());
        let bad: TracePolynomial = "(a1) - 2".parse().unwrap();
        let r = verify_identity(&bad, 10, 1, Mode::Sl2).unwrap();
        let c = r.counterexample.expect("(a1) - 2 is not an identity");
        assert_eq!(eval_poly(&c.representation, &bad).unwrap(), c.value);
        let inv: TracePolynomial = "(a1 a2^-1)".parse().unwrap();
        assert_eq!(
            verify_identity(&inv, 3, 1, Mode::Any),
            Err(EvalError::InversesInAnyMode)
        );
    }

    #[test]
    fn verify_is_deterministic() {
        let bad: TracePolynomial = "(a1 a2) - 3".parse().unwrap();
        assert_eq!(
            verify_identity(&bad, 20, 9, Mode::Sl2).unwrap(),
            verify_identity(&bad, 20, 9, Mode::Sl2).unwrap()
        );
    }

    #[test]
    fn representation_file_round_trip() {
        let text = "# shears\na1 = [[1,1],[0,1]]\na2 = [[ 1, 0 ], [ 1, 1 ]]\n";
        let rep: Representation = text.parse().unwrap();
        assert_eq!(rep, shear_pair());
        let again: Representation = rep.to_string().parse().unwrap();
        assert_eq!(again, rep);
        let any: Representation = "a1 = [[1/2,0],[0,3]]".parse().unwrap();
        assert_eq!(any.mode(), Mode::Any);
        assert!(matches!(
            "a1 = [[1,2],[3]]".parse::<Representation>(),
            Err(EvalError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn matrix4_constants() {
        let ident = [
            Matrix2::identity(),
            Matrix2::identity(),
            Matrix2::identity(),
            Matrix2::identity(),
        ];
        let m = m4_of(&ident);
        let prod = m.mul(&j_const()).mul(&m.transpose());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(prod.entry(i, j), &coeff(2));
            }
        }
        assert!(det4(&Matrix4::identity().sub(&jstar_const())).is_zero());
        assert_eq!(det4(&j_const()), coeff(-1));
        assert_eq!(det4(&Matrix4::identity()), coeff(1));
    }
}
