//! Text grammar for trace polynomials.
//!
//! ```text
//! poly   := ['-' | '+'] term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := number | '(' word ')' | 't' digits | 't{' i (',' i)* '}'  each optionally '^' k
//! number := integer | integer '/' integer
//! ```

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Coeff, TracePolynomial};
use crate::words::{parse_word, WordParseError};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("polynomial syntax error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<BigInt, PolyParseError> {
        match self.digits() {
            Some(d) => Ok(d.parse().expect("ascii digits")),
            None => self.err("expected digits"),
        }
    }

    fn exponent(&mut self) -> Result<u32, PolyParseError> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.bump();
        self.skip_ws();
        match self.digits() {
            Some(d) => d.parse().or_else(|_| self.err("exponent too large")),
            None => self.err("expected exponent after `^`"),
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '(' || c == 't' || c == '*')
    }

    fn factor(&mut self) -> Result<TracePolynomial, PolyParseError> {
        self.skip_ws();
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = Coeff::from_integer(num);
                if self.peek() == Some('/') {
                    self.bump();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    value /= Coeff::from_integer(den);
                }
                TracePolynomial::constant(value)
            }
            Some('(') => {
                self.bump();
                let start = self.pos;
                let Some(len) = self.src[start..].find(')') else {
                    return self.err("unclosed `(`");
                };
                let inner = &self.src[start..start + len];
                let word = parse_word(inner, start).map_err(|e| PolyParseError {
                    pos: match e {
                        WordParseError::BadToken { pos, .. } => pos,
                        WordParseError::Empty => start,
                    },
                    msg: e.to_string(),
                })?;
                self.pos = start + len + 1;
                TracePolynomial::class_var(&word)
            }
            Some('t') => {
                self.bump();
                let indices: Vec<u32> = if self.peek() == Some('{') {
                    self.bump();
                    let mut idx = Vec::new();
                    loop {
                        self.skip_ws();
                        let n = self.integer()?;
                        idx.push(u32::try_from(n).or_else(|_| self.err("index too large"))?);
                        self.skip_ws();
                        match self.bump() {
                            Some(',') => continue,
                            Some('}') => break,
                            _ => return self.err("expected `,` or `}` in coordinate subscript"),
                        }
                    }
                    idx
                } else {
                    match self.digits() {
                        Some(d) => d.bytes().map(|b| (b - b'0') as u32).collect(),
                        None => return self.err("expected coordinate subscript after `t`"),
                    }
                };
                if indices.is_empty() || indices[0] == 0 || !indices.windows(2).all(|w| w[0] < w[1]) {
                    return self.err("coordinate subscripts must be positive and strictly ascending");
                }
                TracePolynomial::t(&indices)
            }
            _ => return self.err("expected a number, `(word)` or coordinate"),
        };
        let e = self.exponent()?;
        Ok(base.pow(e))
    }

    fn term(&mut self) -> Result<TracePolynomial, PolyParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly(&mut self) -> Result<TracePolynomial, PolyParseError> {
        self.skip_ws();
        let mut sign_neg = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            None => return self.err("empty polynomial"),
            _ => false,
        };
        let mut acc = TracePolynomial::zero();
        loop {
            let t = self.term()?;
            if sign_neg {
                acc -= &t;
            } else {
                acc += t;
            }
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some('+') => sign_neg = false,
                Some('-') => sign_neg = true,
                Some(c) => return self.err(format!("unexpected `{c}`")),
            }
            self.bump();
        }
    }
}

pub(super) fn parse_poly(src: &str) -> Result<TracePolynomial, PolyParseError> {
    Parser { src, pos: 0 }.poly()
}
