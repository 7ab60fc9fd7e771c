use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MAX_X};
use super::ArithError;

/// Sparse Laurent polynomial in `x_1..x_n` and `q` with integer coefficients.
///
/// No stored coefficient is zero. Terms are kept in the global monomial
/// order, so the last entry is the leading term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_X, "at most {MAX_X} torus variables supported");
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::term(nvars, Monomial::ONE, c)
    }

    pub fn monomial(nvars: usize, m: Monomial) -> Self {
        Self::term(nvars, m, BigInt::one())
    }

    pub fn term(nvars: usize, m: Monomial, c: BigInt) -> Self {
        assert!(m.max_x_index() <= nvars, "monomial {m} uses more than {nvars} torus variables");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(nvars: usize, it: I) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Same polynomial viewed with a larger variable count.
    pub fn widen(&self, nvars: usize) -> Poly {
        assert!(nvars >= self.nvars && nvars <= MAX_X);
        Poly { nvars, terms: self.terms.clone() }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn has_x(&self) -> bool {
        self.terms.keys().any(|m| m.has_x())
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.is_zero() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.coeff(&Monomial::ONE))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.max_x_index() <= self.nvars);
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Poly) -> Result<(), ArithError> {
        if self.nvars != other.nvars {
            return Err(ArithError::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, ArithError> {
        self.check(other)?;
        let (mut out, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, ArithError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, ArithError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.nvars));
        }
        if other.is_monomial() {
            let (m, c) = other.leading().unwrap();
            return Ok(self.mul_term(m, c));
        }
        if self.is_monomial() {
            let (m, c) = self.leading().unwrap();
            return Ok(other.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Ok(Poly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        self.mul_term(&Monomial::ONE, c)
    }

    /// Exact division of every coefficient by `c`; caller guarantees divisibility.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    debug_assert!((v % c).is_zero());
                    (*m, v / c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.try_mul(&base).unwrap();
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base).unwrap();
            }
        }
        out
    }

    /// Nonnegative gcd of the integer coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Componentwise minimum exponent over all terms (`ONE` for zero).
    pub fn min_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.meet(m)),
        }
    }

    pub fn max_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.join(m)),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.is_nonnegative())
    }

    pub fn max_norm(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Degree in flat variable `v` (`v == nvars` is `q`); `-1` for zero.
    pub(crate) fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|m| m.var_exp(v, self.nvars)).max().unwrap_or(-1)
    }

    pub(crate) fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.var_exp(v, self.nvars) != 0)
    }

    /// Substitute the integer `value` for flat variable `v` (nonnegative exponents only).
    pub(crate) fn eval_var(&self, v: usize, value: &BigInt) -> Poly {
        let n = self.nvars;
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        let mut out = Poly::zero(n);
        for (m, c) in &self.terms {
            let e = m.var_exp(v, n);
            debug_assert!(e >= 0);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut k = *m;
            k.set_var_exp(v, n, 0);
            out.add_term(k, c * &powers[e as usize]);
        }
        out
    }

    /// Split into coefficients with respect to flat variable `v`:
    /// `self = sum_e coeff_e * v^e`, with `v` absent from each coefficient.
    pub(crate) fn coefficients_in(&self, v: usize) -> BTreeMap<i32, Poly> {
        let n = self.nvars;
        let mut out: BTreeMap<i32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.var_exp(v, n);
            let mut k = *m;
            k.set_var_exp(v, n, 0);
            out.entry(e).or_insert_with(|| Poly::zero(n)).add_term(k, c.clone());
        }
        out
    }

    /// Exact division in `Z[x, q]` (nonnegative exponents). `None` if `divisor`
    /// does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero(self.nvars));
        }
        let (lm, lc) = divisor.leading().map(|(m, c)| (*m, c.clone())).unwrap();
        if divisor.is_monomial() {
            let mut out = Poly::zero(self.nvars);
            for (m, c) in &self.terms {
                if !m.divisible_by(&lm) || !(c % &lc).is_zero() {
                    return None;
                }
                out.terms.insert(m.div(&lm), c / &lc);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            // a nonzero multiple of a multi-term polynomial has at least two terms
            if rem.len() == 1 || !rm.divisible_by(&lm) {
                return None;
            }
            let (qc, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = rm.div(&lm);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.terms.insert(qm, qc);
        }
        Some(quot)
    }

    pub fn eval(&self, q: &BigRational, x: &[BigRational]) -> BigRational {
        assert!(x.len() >= self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            t *= pow_rat(q, m.q_exp());
            for (i, xi) in x.iter().enumerate().take(self.nvars) {
                let e = m.x_exp(i + 1);
                if e != 0 {
                    t *= pow_rat(xi, e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Apply the Laurent ring map sending `q` to `q_img` and `x_i` to `x_img[i]`.
    pub fn substitute(&self, q_img: &Monomial, x_img: &[Monomial], nvars_out: usize) -> Poly {
        let mut out = Poly::zero(nvars_out);
        for (m, c) in &self.terms {
            let mut k = q_img.pow(m.q_exp());
            for i in 0..self.nvars {
                k = k.mul(&x_img[i].pow(m.x_exp(i + 1)));
            }
            out.add_term(k, c.clone());
        }
        out
    }
}

pub(crate) fn pow_rat(base: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]({})", self.nvars, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::monomial(3, Monomial::x(i, 1))
    }

    fn q() -> Poly {
        Poly::monomial(3, Monomial::q(1))
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = x(1).try_sub(&q().try_mul(&x(2)).unwrap()).unwrap();
        let b = x(3).try_add(&Poly::one(3)).unwrap().pow(2);
        let p = a.try_mul(&b).unwrap();
        assert_eq!(p.div_exact(&a).unwrap(), b);
        assert_eq!(p.div_exact(&b).unwrap(), a);
        let c = x(2).try_add(&Poly::constant(3, BigInt::from(2))).unwrap();
        assert!(p.div_exact(&c).is_none());
    }

    #[test]
    fn var_count_mismatch_is_an_error() {
        let a = Poly::one(2);
        let b = Poly::one(3);
        assert!(matches!(a.try_add(&b), Err(ArithError::VarCountMismatch { .. })));
    }

    #[test]
    fn eval_var_substitutes() {
        // (x_1 + 2 q)^2 at x_1 = 3
        let p = x(1).try_add(&q().scale(&BigInt::from(2))).unwrap().pow(2);
        let e = p.eval_var(0, &BigInt::from(3));
        let expect = Poly::constant(3, BigInt::from(3)).try_add(&q().scale(&BigInt::from(2))).unwrap().pow(2);
        assert_eq!(e, expect);
    }
}
