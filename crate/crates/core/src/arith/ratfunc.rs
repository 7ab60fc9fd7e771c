use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::monomial::Monomial;
use super::poly::Poly;
use super::{ArithError, Ring};

/// Element of `Q(x_1..x_n, q)` in canonical form.
///
/// Canonical means: numerator and denominator are polynomials (no negative
/// exponents) with no common factor in `Z[x, q]`, and the denominator's
/// leading coefficient is positive. Two values are equal iff their canonical
/// forms coincide, so `==` is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    nvars: usize,
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn zero(nvars: usize) -> Self {
        RationalFunction { nvars, num: Poly::zero(nvars), den: Poly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::from_poly(Poly::constant(nvars, BigInt::from(c)))
    }

    pub fn from_monomial(nvars: usize, m: Monomial) -> Self {
        Self::from_poly(Poly::monomial(nvars, m))
    }

    pub fn q_pow(nvars: usize, e: i32) -> Self {
        Self::from_monomial(nvars, Monomial::q(e))
    }

    /// `x_i` (1-based).
    pub fn x(nvars: usize, i: usize) -> Self {
        Self::from_monomial(nvars, Monomial::x(i, 1))
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        Self::normalized(p, Poly::one(n))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self, ArithError> {
        if num.nvars() != den.nvars() {
            return Err(ArithError::VarCountMismatch { left: num.nvars(), right: den.nvars() });
        }
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a single monomial.
    pub fn is_laurent_polynomial(&self) -> bool {
        self.den.is_monomial()
    }

    pub fn has_x(&self) -> bool {
        self.num.has_x() || self.den.has_x()
    }

    /// Value as a Laurent polynomial, if the denominator is a monomial.
    pub fn as_laurent_poly(&self) -> Option<Poly> {
        if !self.den.is_monomial() {
            return None;
        }
        let (m, c) = self.den.leading().unwrap();
        if !c.is_one() {
            // coefficient must divide every numerator coefficient
            if self.num.terms().any(|(_, v)| !(v % c).is_zero()) {
                return None;
            }
        }
        Some(self.num.mul_monomial(&m.inv()).div_scalar(c))
    }

    /// Same value viewed in a ring with more torus variables.
    pub fn widen(&self, nvars: usize) -> Self {
        RationalFunction { nvars, num: self.num.widen(nvars), den: self.den.widen(nvars) }
    }

    /// Canonicalize an arbitrary `num / den` (Laurent exponents allowed, `den != 0`).
    fn normalized(num: Poly, den: Poly) -> Self {
        let n = num.nvars();
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero(n);
        }
        // clear negative exponents and monomial content
        let mn = num.min_monomial();
        let md = den.min_monomial();
        let rel = mn.div(&md);
        let mut num = num.mul_monomial(&mn.inv()).mul_monomial(&rel.join(&Monomial::ONE));
        let mut den = den.mul_monomial(&md.inv()).mul_monomial(&rel.inv().join(&Monomial::ONE));
        if !num.is_constant() && !den.is_constant() && !num.is_monomial() && !den.is_monomial() {
            let g = gcd(&num, &den);
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        Self::finish(num, den)
    }

    /// Remove integer content and fix the sign; assumes polynomial coprimality.
    fn finish(mut num: Poly, mut den: Poly) -> Self {
        let n = num.nvars();
        let c = num.content().gcd(&den.content());
        if !c.is_one() && !c.is_zero() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.leading_coeff().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalFunction { nvars: n, num, den }
    }

    fn check(&self, other: &Self) -> Result<(), ArithError> {
        if self.nvars != other.nvars {
            return Err(ArithError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            let num = self.num.try_add(&other.num)?;
            return Ok(Self::normalized(num, self.den.clone()));
        }
        let g = gcd(&self.den, &other.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = other.den.div_exact(&g).expect("gcd divides");
        let num = self.num.try_mul(&d)?.try_add(&other.num.try_mul(&b)?)?;
        if num.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let den = self.den.try_mul(&d)?;
        // any common factor of num and den already divides g
        if g.is_constant() {
            return Ok(Self::normalized(num, den));
        }
        let h = gcd(&num.mul_monomial(&num.min_monomial().inv()), &g);
        if h.is_constant() {
            Ok(Self::normalized(num, den))
        } else {
            Ok(Self::normalized(
                num.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            ))
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if self.is_one() {
            return Ok(other.clone());
        }
        if other.is_one() {
            return Ok(self.clone());
        }
        let (a, b, c, d) = (&self.num, &self.den, &other.num, &other.den);
        let g1 = gcd(a, d);
        let g2 = gcd(c, b);
        let a = a.div_exact(&g1).unwrap();
        let d = d.div_exact(&g1).unwrap();
        let c = c.div_exact(&g2).unwrap();
        let b = b.div_exact(&g2).unwrap();
        Ok(Self::finish(a.try_mul(&c)?, b.try_mul(&d)?))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn try_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::finish(self.den.clone(), self.num.clone()))
    }

    fn neg_ref(&self) -> Self {
        RationalFunction { nvars: self.nvars, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn pow(&self, k: i32) -> Result<Self, ArithError> {
        let base = if k < 0 { self.try_inv()? } else { self.clone() };
        let k = k.unsigned_abs();
        Ok(Self::finish(base.num.pow(k), base.den.pow(k)))
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self::normalized(self.num.mul_monomial(m), self.den.clone())
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.nvars);
        }
        Self::normalized(self.num.scale(&BigInt::from(c)), self.den.clone())
    }

    /// Exact value at a point. `x` supplies `x_1..x_n`.
    pub fn eval_at(&self, q: &BigRational, x: &[BigRational]) -> Result<BigRational, ArithError> {
        if x.len() != self.nvars {
            return Err(ArithError::VarCountMismatch { left: self.nvars, right: x.len() });
        }
        let zero_at = |v: &BigRational| Zero::is_zero(v);
        if zero_at(q) || x.iter().any(zero_at) {
            return Err(ArithError::Pole);
        }
        let d = self.den.eval(q, x);
        if Zero::is_zero(&d) {
            return Err(ArithError::Pole);
        }
        Ok(self.num.eval(q, x) / d)
    }

    /// Ring map induced by sending `q` and each `x_i` to Laurent monomials in
    /// a ring with `nvars_out` torus variables.
    pub fn substitute(&self, q_img: &Monomial, x_img: &[Monomial], nvars_out: usize) -> Result<Self, ArithError> {
        assert_eq!(x_img.len(), self.nvars);
        let den = self.den.substitute(q_img, x_img, nvars_out);
        if den.is_zero() {
            return Err(ArithError::Pole);
        }
        Ok(Self::normalized(self.num.substitute(q_img, x_img, nvars_out), den))
    }

    /// `q -> q^-1`, every `x_i -> 1`, landing in the ring with no torus variables.
    pub fn specialize_inverted_q(&self) -> Result<Self, ArithError> {
        let ones = vec![Monomial::ONE; self.nvars];
        self.substitute(&Monomial::q(-1), &ones, 0)
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Self, ArithError> {
        super::parse::parse_rational(s, nvars)
    }
}

impl Ring for RationalFunction {
    fn zero_like(&self) -> Self {
        Self::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Self::one(self.nvars)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
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

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> $tr<&'a RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        self.neg_ref()
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.len() > 1 || p.leading().is_some_and(|(m, c)| c.is_negative() && !m.is_one())
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if needs_parens(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let den = self.den.to_string();
        if den.contains(['*', ' ']) {
            write!(f, "/({den})")
        } else {
            write!(f, "/{den}")
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str, n: usize) -> RationalFunction {
        RationalFunction::parse(s, n).unwrap()
    }

    #[test]
    fn cancellation_in_q() {
        assert_eq!(rf("q - q^-1", 0) + rf("q + q^-1", 0), rf("2*q", 0));
    }

    #[test]
    fn additive_identity() {
        let f = rf("(x_1 + q)/(x_2 - q^2*x_1)", 2);
        assert_eq!(&f + &RationalFunction::zero(2), f);
    }

    #[test]
    fn partial_fractions_collapse_to_minus_one() {
        let s = rf("x_1/(x_2 - x_1)", 2) + rf("x_2/(x_1 - x_2)", 2);
        assert_eq!(s, RationalFunction::constant(2, -1));
    }

    #[test]
    fn products_and_quotients() {
        assert_eq!(rf("q - q^-1", 0) * rf("q + q^-1", 0), rf("q^2 - q^-2", 0));
        let f = rf("(1 + x_1*q)/(x_2 - 3)", 2);
        assert!((&f / &f).is_one());
        let p = rf("1 - x_1/x_2", 2) * rf("1 - x_2/x_1", 2);
        assert_eq!(p, rf("2 - x_1/x_2 - x_2/x_1", 2));
    }

    #[test]
    fn division_by_zero() {
        let f = rf("x_1", 1);
        assert_eq!(f.try_div(&RationalFunction::zero(1)), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn mismatched_variable_count() {
        let a = rf("x_1", 1);
        let b = rf("x_1", 2);
        assert!(matches!(a.try_add(&b), Err(ArithError::VarCountMismatch { left: 1, right: 2 })));
    }

    #[test]
    fn evaluation() {
        let half = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(rf("q - q^-1", 0).eval_at(&half(2, 1), &[]).unwrap(), half(3, 2));
        let f = rf("x_1/(x_2 - x_1) + x_2/(x_1 - x_2)", 2);
        assert_eq!(f.eval_at(&half(5, 3), &[half(2, 7), half(-4, 1)]).unwrap(), half(-1, 1));
        let z = RationalFunction::zero(3).eval_at(&half(7, 1), &[half(1, 2), half(1, 3), half(1, 5)]);
        assert_eq!(z.unwrap(), half(0, 1));
        let g = rf("1/(x_1 - q)", 1);
        assert_eq!(g.eval_at(&half(2, 1), &[half(2, 1)]), Err(ArithError::Pole));
    }

    #[test]
    fn canonical_sign_and_content() {
        let a = rf("(2*x_1 - 2)/(4 - 4*x_1^2)", 1);
        assert_eq!(a, rf("-1/(2*x_1 + 2)", 1));
        assert!(a.denom().leading_coeff().is_positive());
    }

    #[test]
    fn inverted_q_specialization() {
        let f = rf("x_1*x_2*(1 - q^-4)", 2);
        assert_eq!(f.specialize_inverted_q().unwrap(), rf("1 - q^4", 0));
    }
}
