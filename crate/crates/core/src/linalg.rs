//! Dense matrices over an exact ring, with the handful of operations the
//! representation and localization code needs.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{ArithError, RationalFunction, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<T: Ring> {
    rows: usize,
    cols: usize,
    zero: T,
    data: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, zero: &T) -> Self {
        let zero = zero.zero_like();
        Matrix { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, zero: &T) -> Self {
        Self::scalar(n, &zero.one_like())
    }

    pub fn scalar(n: usize, c: &T) -> Self {
        let mut m = Self::zeros(n, n, c);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, zero: &T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(rows, cols, zero);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_element(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    /// Row-major iteration over nonzero entries.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / self.cols, idx % self.cols, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn map<U: Ring>(&self, zero: &U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            zero: zero.zero_like(),
            data: self.data.iter().map(|v| if v.is_zero() { zero.zero_like() } else { f(v) }).collect(),
        }
    }

    pub fn try_map<U: Ring, E>(&self, zero: &U, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(if v.is_zero() { zero.zero_like() } else { f(v)? });
        }
        Ok(Matrix { rows: self.rows, cols: self.cols, zero: zero.zero_like(), data })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols, &self.zero);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = slot.plus(&a.times(b));
                }
            }
        }
        out
    }

    fn zip(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            zero: self.zero.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| if b.is_zero() { a.clone() } else { a.plus(b) })
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| if b.is_zero() { a.clone() } else { a.minus(b) })
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(&self.zero, |v| c.times(v))
    }

    pub fn neg(&self) -> Self {
        self.map(&self.zero, |v| v.negate())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), &self.zero, |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// `Some(c)` when the matrix equals `c * Id`.
    pub fn scalar_value(&self) -> Option<T> {
        if self.rows != self.cols {
            return None;
        }
        let c = if self.rows == 0 { self.zero.clone() } else { self.get(0, 0).clone() };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                let ok = if i == j { *v == c } else { v.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// First position where two equally shaped matrices differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shape mismatch");
        (0..self.data.len()).find(|&i| self.data[i] != other.data[i]).map(|i| (i / self.cols, i % self.cols))
    }
}

impl<T: Ring + std::fmt::Display> std::fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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

impl Matrix<RationalFunction> {
    pub fn eval_at(&self, q: &BigRational, x: &[BigRational]) -> Result<Matrix<BigRational>, ArithError> {
        self.try_map(&BigRational::zero(), |v| v.eval_at(q, x))
    }
}

impl Matrix<BigRational> {
    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !Zero::is_zero(self.get(i, c))) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = self.get(r, c).recip();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || Zero::is_zero(self.get(i, c)) {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = self.get(i, j) - &f * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn determinant(&self) -> BigRational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = BigRational::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !Zero::is_zero(m.get(i, c))) else {
                return BigRational::zero();
            };
            if p != c {
                for j in 0..m.cols {
                    m.data.swap(c * m.cols + j, p * m.cols + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..m.rows {
                if Zero::is_zero(m.get(i, c)) {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn rational_linear_algebra() {
        let m = Matrix::from_fn(3, 3, &r(0), |i, j| r([[2, 1, 0], [4, 3, 1], [6, 4, 1]][i][j]));
        assert_eq!(m.determinant(), r(0));
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for i in 0..3 {
            let s: BigRational = (0..3).map(|j| m.get(i, j) * &ns[0][j]).sum();
            assert!(Zero::is_zero(&s));
        }
        let id = Matrix::identity(3, &r(0));
        assert_eq!(id.determinant(), r(1));
        assert_eq!(m.mul(&id), m);
    }

    #[test]
    fn scalar_detection() {
        let s = Matrix::scalar(2, &r(5));
        assert_eq!(s.scalar_value(), Some(r(5)));
        let mut t = s.clone();
        t.set(0, 1, r(1));
        assert_eq!(t.scalar_value(), None);
        assert_eq!(t.first_difference(&s), Some((0, 1)));
    }
}
