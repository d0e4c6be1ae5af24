//! Symbolic computation with SL(2,C) trace polynomials of free groups.
//!
//! * [`words`]: free-group words and conjugacy classes up to inversion.
//! * [`tracepoly`]: the trace polynomial ring with exact coefficients.
//! * [`reduce`]: rewriting to the coordinates `t_I` and `t_I, |I| <= 3`.
//! * [`symgroup`]: permutations, Young symmetrizers and Procesi identities.
//! * [`repeval`]: exact 2x2 matrix representations and evaluation.
//! * [`charring`]: defining ideals of character varieties and Gröbner bases.
//! * [`cli`]: the command-line front end.

pub mod charring;
pub mod cli;
pub mod reduce;
pub mod repeval;
pub mod symgroup;
pub mod tracepoly;
pub mod words;

pub use tracepoly::{Coeff, Monomial, TracePolynomial, TraceVar};
pub use words::{ConjClass, Letter, Word};
