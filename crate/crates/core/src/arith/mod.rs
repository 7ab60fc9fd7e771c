//! Exact arithmetic: sparse Laurent polynomials over Z, canonical rational
//! functions in `q, x_1..x_n`, and seeded identity testing.

mod gcd;
mod laurent;
mod monomial;
mod parse;
mod poly;
mod ratfunc;
pub mod zippel;

use std::fmt::Debug;

pub use gcd::gcd;
pub use laurent::LaurentScalar;
pub use monomial::{Monomial, MAX_X};
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use zippel::{check_identity, EvalPoint, IdentityCheck, PointSampler, DEFAULT_POINTS, DEFAULT_SEED};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation point is a pole")]
    Pole,
    #[error("not a Laurent polynomial in q: {0}")]
    NotLaurentInQ(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Minimal ring interface used by the generic matrix code.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
}
