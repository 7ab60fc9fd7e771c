use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::{pow_rat, Poly};
use super::ratfunc::RationalFunction;
use super::{ArithError, Ring};

/// Integer Laurent polynomial in the single variable `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::q_pow(0)
    }

    pub fn q_pow(e: i32) -> Self {
        Self::term(1, e)
    }

    pub fn term(c: i64, e: i32) -> Self {
        let mut s = Self::zero();
        s.add_term(e, BigInt::from(c));
        s
    }

    pub fn constant(c: i64) -> Self {
        Self::term(c, 0)
    }

    /// `q - q^-1`.
    pub fn q_minus_inv() -> Self {
        Self::from_terms([(1, 1), (-1, -1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i32)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (c, e) in it {
            s.add_term(e, BigInt::from(c));
        }
        s
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn shift(&self, e: i32) -> Self {
        LaurentScalar { terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.terms.iter().fold(BigRational::zero(), |acc, (e, c)| {
            acc + BigRational::from_integer(c.clone()) * pow_rat(q, *e)
        })
    }

    pub fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().map(|(e, c)| (Monomial::q(*e), c.clone())))
    }

    pub fn to_rational(&self, nvars: usize) -> RationalFunction {
        RationalFunction::from_poly(self.to_poly(nvars))
    }

    /// Inverse of [`to_rational`](Self::to_rational); fails unless the value
    /// is a Laurent polynomial in `q` alone.
    pub fn from_rational(f: &RationalFunction) -> Result<Self, ArithError> {
        let num = f.numer();
        let den = f.denom();
        if !den.is_monomial() || num.has_x() || den.has_x() {
            return Err(ArithError::NotLaurentInQ(f.to_string()));
        }
        let (dm, dc) = den.leading().unwrap();
        if !dc.is_one() {
            return Err(ArithError::NotLaurentInQ(f.to_string()));
        }
        let shift = -dm.q_exp();
        let mut out = Self::zero();
        for (m, c) in num.terms() {
            out.add_term(m.q_exp() + shift, c.clone());
        }
        Ok(out)
    }

    pub fn parse(s: &str) -> Result<Self, ArithError> {
        let f = RationalFunction::parse(s, 0)?;
        Self::from_rational(&f)
    }
}

impl<'a> Add<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &'a LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &'a LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentScalar> for &'a LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &'a LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Ring for LaurentScalar {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let a = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{a}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_q_differences() {
        let a = LaurentScalar::q_minus_inv();
        let b = LaurentScalar::from_terms([(1, 1), (1, -1)]);
        assert_eq!(&a * &b, LaurentScalar::from_terms([(1, 2), (-1, -2)]));
    }

    #[test]
    fn display_and_parse() {
        let a = LaurentScalar::from_terms([(1, 1), (-1, -1), (3, 0)]);
        assert_eq!(a.to_string(), "q + 3 - q^-1");
        assert_eq!(LaurentScalar::parse(&a.to_string()).unwrap(), a);
        assert!(LaurentScalar::parse("1/(1-q)").is_err());
    }

    #[test]
    fn rational_round_trip() {
        let a = LaurentScalar::from_terms([(2, -3), (-5, 4)]);
        assert_eq!(LaurentScalar::from_rational(&a.to_rational(2)).unwrap(), a);
    }
}
