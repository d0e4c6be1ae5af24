//! Free-group words on generators `a1 … an` and canonical representatives of
//! conjugacy classes taken up to inversion.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A generator `a_index` or its inverse.
///
/// Letters are totally ordered as `a1 < a1^-1 < a2 < a2^-1 < …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    index: u32,
    inverse: bool,
}

impl Letter {
    pub fn new(index: u32, inverse: bool) -> Self {
        assert!(index >= 1, "generator indices start at 1");
        Letter { index, inverse }
    }

    pub fn gen(index: u32) -> Self {
        Letter::new(index, false)
    }

    pub fn inv(index: u32) -> Self {
        Letter::new(index, true)
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` for a generator, `-1` for an inverse generator.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.inverse != other.inverse
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.index, self.inverse).cmp(&(other.index, other.inverse))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "a{}^-1", self.index)
        } else {
            write!(f, "a{}", self.index)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// Reduces `letters` freely; the result equals the input in the free group.
    pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            match out.last() {
                Some(&last) if last.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn gen(index: u32) -> Self {
        Word {
            letters: vec![Letter::gen(index)],
        }
    }

    /// The positive word `a_{i1} a_{i2} …`.
    pub fn positive(indices: &[u32]) -> Self {
        Word::free_reduce(indices.iter().map(|&i| Letter::gen(i)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::free_reduce(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn power(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..k.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    pub fn inverse_count(&self) -> usize {
        self.letters.iter().filter(|l| l.inverse).count()
    }

    pub fn max_index(&self) -> u32 {
        self.letters.iter().map(|l| l.index).max().unwrap_or(0)
    }

    /// True when no inverse letters occur.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    /// Positive with every generator occurring at most once.
    pub fn is_positive_square_free(&self) -> bool {
        if !self.is_positive() {
            return false;
        }
        let mut seen: Vec<u32> = self.letters.iter().map(|l| l.index).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Indices of a positive word whose indices strictly increase.
    pub fn ascending_indices(&self) -> Option<Vec<u32>> {
        if !self.is_positive() {
            return None;
        }
        let idx: Vec<u32> = self.letters.iter().map(|l| l.index).collect();
        if idx.windows(2).all(|w| w[0] < w[1]) {
            Some(idx)
        } else {
            None
        }
    }

    /// Replaces every letter `a_i^{±1}` by `f(i)^{±1}` and reduces.
    pub fn substitute<F: Fn(u32) -> Word>(&self, f: F) -> Word {
        let mut out = Vec::new();
        for l in &self.letters {
            let image = f(l.index);
            if l.inverse {
                out.extend(image.inverse().letters);
            } else {
                out.extend(image.letters);
            }
        }
        Word::free_reduce(out)
    }

    fn cyclically_reduced(&self) -> &[Letter] {
        let mut s = &self.letters[..];
        while s.len() >= 2 && s[0].cancels(s[s.len() - 1]) {
            s = &s[1..s.len() - 1];
        }
        s
    }

    /// The cyclically reduced core of the word.
    pub fn cyclic_reduction(&self) -> Word {
        Word::from_reduced(self.cyclically_reduced().to_vec())
    }

    /// Random reduced word built from `1..=max_len` uniform letters over
    /// `a1..an` (free reduction may shorten it).
    pub fn random<R: rand::Rng>(rng: &mut R, max_len: usize, n: u32) -> Word {
        let len = rng.gen_range(1..=max_len);
        Word::free_reduce((0..len).map(|_| Letter::new(rng.gen_range(1..=n), rng.gen_bool(0.5))))
    }

    /// Writes a sequence of letters as a word without re-reducing.
    fn from_reduced(letters: Vec<Letter>) -> Word {
        Word { letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordParseError {
    #[error("bad word token `{token}` at byte {pos}")]
    BadToken { token: String, pos: usize },
    #[error("empty word text (use `1` for the identity)")]
    Empty,
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s, 0)
    }
}

/// Parses the whitespace separated token grammar, e.g. `a1 a2^-1 a1^-1`.
/// `offset` is added to reported positions.
pub(crate) fn parse_word(s: &str, offset: usize) -> Result<Word, WordParseError> {
    let mut letters = Vec::new();
    let mut any = false;
    let mut pos = 0;
    for token in s.split_whitespace() {
        let at = s[pos..].find(token).map(|p| p + pos).unwrap_or(pos);
        pos = at + token.len();
        any = true;
        if token == "1" {
            continue;
        }
        letters.push(parse_letter(token).ok_or_else(|| WordParseError::BadToken {
            token: token.to_string(),
            pos: offset + at,
        })?);
    }
    if !any {
        return Err(WordParseError::Empty);
    }
    Ok(Word::free_reduce(letters))
}

fn parse_letter(token: &str) -> Option<Letter> {
    let body = token.strip_prefix('a')?;
    let (digits, inverse) = match body.strip_suffix("^-1") {
        Some(d) => (d, true),
        None => (body, false),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let index: u32 = digits.parse().ok()?;
    (index >= 1).then(|| Letter::new(index, inverse))
}

/// Canonical representative of a free-group element modulo conjugation and
/// inversion.
///
/// The stored word is cyclically reduced and lexicographically least among
/// all rotations of itself and of its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ConjClass {
    word: Word,
}

impl ConjClass {
    pub fn of(w: &Word) -> ConjClass {
        let core = w.cyclically_reduced();
        if core.is_empty() {
            return ConjClass { word: Word::identity() };
        }
        let inv: Vec<Letter> = core.iter().rev().map(|l| l.inverted()).collect();
        let mut best = least_rotation(core);
        let cand = least_rotation(&inv);
        // ties keep the rotation of the original word
        if cand < best {
            best = cand;
        }
        ConjClass {
            word: Word::from_reduced(best),
        }
    }

    pub fn identity() -> ConjClass {
        ConjClass { word: Word::identity() }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Number of pairs `p < q` with `index[p] > index[q]`, read from the
    /// canonical rotation. Zero exactly for ascending words.
    pub fn inversion_count(&self) -> usize {
        let idx: Vec<u32> = self.word.letters.iter().map(|l| l.index).collect();
        let mut count = 0;
        for p in 0..idx.len() {
            for q in p + 1..idx.len() {
                if idx[p] > idx[q] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl Ord for ConjClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.letters.cmp(&other.word.letters))
    }
}

impl PartialOrd for ConjClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let mut best = 0;
    for start in 1..n {
        let better = (0..n)
            .map(|k| letters[(start + k) % n].cmp(&letters[(best + k) % n]))
            .find(|o| *o != Ordering::Equal)
            == Some(Ordering::Less);
        if better {
            best = start;
        }
    }
    (0..n).map(|k| letters[(best + k) % n]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn free_reduction() {
        assert!(w("a1 a1^-1").is_empty());
        assert_eq!(w("a1 a2 a2^-1 a3"), w("a1 a3"));
        assert_eq!(w("a1 a2").len(), 2);
        assert_eq!(w("a2 a3 a3^-1 a2^-1 a1").to_string(), "a1");
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(ConjClass::of(&w("a1 a2 a1^-1")).word(), &w("a2"));
        assert_eq!(ConjClass::of(&w("a2 a1")).word(), &w("a1 a2"));
        assert_eq!(ConjClass::of(&w("a2^-1 a1^-1")).word(), &w("a1 a2"));
        assert!(ConjClass::of(&w("a3 a1 a1^-1 a3^-1")).is_identity());
        assert_eq!(ConjClass::identity().to_string(), "1");
    }

    #[test]
    fn ascending_positive_words_are_self_canonical() {
        for s in ["a1", "a1 a2", "a1 a3 a4", "a2 a3 a5 a7"] {
            assert_eq!(ConjClass::of(&w(s)).word(), &w(s));
        }
        // a1 a3 a2 is not ascending and is its own class
        assert_eq!(ConjClass::of(&w("a3 a2 a1")).word(), &w("a1 a3 a2"));
    }

    #[test]
    fn group_operations() {
        assert!(w("a1").concat(&w("a1^-1")).is_empty());
        assert_eq!(w("a1 a2").inverse(), w("a2^-1 a1^-1"));
        assert_eq!(w("a1").power(3), w("a1 a1 a1"));
        assert_eq!(w("a1 a2").power(-1), w("a2^-1 a1^-1"));
        assert!(w("a1 a2").power(0).is_empty());
    }

    #[test]
    fn letter_order() {
        assert!(Letter::gen(1) < Letter::inv(1));
        assert!(Letter::inv(1) < Letter::gen(2));
        assert_eq!(Letter::inv(3).sign(), -1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            "a1 b2".parse::<Word>(),
            Err(WordParseError::BadToken { pos: 3, .. })
        ));
        assert!(matches!("a0".parse::<Word>(), Err(WordParseError::BadToken { .. })));
        assert_eq!("   ".parse::<Word>(), Err(WordParseError::Empty));
        assert!("1".parse::<Word>().unwrap().is_empty());
        assert_eq!("a12^-1".parse::<Word>().unwrap().letters()[0], Letter::inv(12));
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(ConjClass::of(&w("a1 a2 a3")).inversion_count(), 0);
        assert_eq!(ConjClass::of(&w("a1 a3 a2")).inversion_count(), 1);
        assert_eq!(ConjClass::of(&w("a1 a4 a3 a2")).inversion_count(), 3);
    }
}
