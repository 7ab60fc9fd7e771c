use std::cmp::Ordering;
use std::fmt;

/// Largest number of torus variables `x_1..x_n` a monomial can carry.
pub const MAX_X: usize = 8;

/// Laurent monomial `q^a * x_1^b_1 * ... * x_n^b_n`.
///
/// Unused `x` slots stay zero, so monomials over different variable counts
/// compare and multiply consistently. The global order is total degree
/// first, then lexicographic with `x_1 < x_2 < ... < x_n < q` (the exponent
/// of `q` is compared first).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    q_exp: i32,
    x_exps: [i32; MAX_X],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q_exp: 0, x_exps: [0; MAX_X] };

    pub fn new(q_exp: i32, x_exps: &[i32]) -> Self {
        assert!(x_exps.len() <= MAX_X, "at most {MAX_X} torus variables supported");
        let mut x = [0; MAX_X];
        x[..x_exps.len()].copy_from_slice(x_exps);
        Monomial { q_exp, x_exps: x }
    }

    pub fn q(e: i32) -> Self {
        Monomial { q_exp: e, ..Self::ONE }
    }

    /// `x_i^e` with the 1-based index used throughout (`x_1` is index 1).
    pub fn x(i: usize, e: i32) -> Self {
        assert!((1..=MAX_X).contains(&i), "torus variable x_{i} out of range");
        let mut m = Self::ONE;
        m.x_exps[i - 1] = e;
        m
    }

    pub fn q_exp(&self) -> i32 {
        self.q_exp
    }

    /// Exponent of `x_i` (1-based).
    pub fn x_exp(&self, i: usize) -> i32 {
        self.x_exps[i - 1]
    }

    pub fn x_exps(&self, n: usize) -> &[i32] {
        &self.x_exps[..n]
    }

    /// Exponent of variable `v` in the flat indexing `0..n` = `x_1..x_n`, `n` = `q`.
    pub(crate) fn var_exp(&self, v: usize, n: usize) -> i32 {
        if v == n {
            self.q_exp
        } else {
            self.x_exps[v]
        }
    }

    pub(crate) fn set_var_exp(&mut self, v: usize, n: usize, e: i32) {
        if v == n {
            self.q_exp = e;
        } else {
            self.x_exps[v] = e;
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn total_degree(&self) -> i64 {
        self.q_exp as i64 + self.x_exps.iter().map(|&e| e as i64).sum::<i64>()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        out.q_exp += other.q_exp;
        for (a, b) in out.x_exps.iter_mut().zip(other.x_exps.iter()) {
            *a += b;
        }
        out
    }

    pub fn inv(&self) -> Monomial {
        let mut out = *self;
        out.q_exp = -out.q_exp;
        for a in out.x_exps.iter_mut() {
            *a = -*a;
        }
        out
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut out = *self;
        out.q_exp *= k;
        for a in out.x_exps.iter_mut() {
            *a *= k;
        }
        out
    }

    /// Componentwise minimum.
    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        out.q_exp = out.q_exp.min(other.q_exp);
        for (a, b) in out.x_exps.iter_mut().zip(other.x_exps.iter()) {
            *a = (*a).min(*b);
        }
        out
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        out.q_exp = out.q_exp.max(other.q_exp);
        for (a, b) in out.x_exps.iter_mut().zip(other.x_exps.iter()) {
            *a = (*a).max(*b);
        }
        out
    }

    pub fn is_nonnegative(&self) -> bool {
        self.q_exp >= 0 && self.x_exps.iter().all(|&e| e >= 0)
    }

    /// Whether `other` divides `self` as ordinary (non-Laurent) monomials.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.q_exp >= other.q_exp && self.x_exps.iter().zip(other.x_exps.iter()).all(|(a, b)| a >= b)
    }

    /// Highest index `i` with a nonzero `x_i` exponent, 0 if none.
    pub fn max_x_index(&self) -> usize {
        self.x_exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1)
    }

    pub fn has_x(&self) -> bool {
        self.x_exps.iter().any(|&e| e != 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.q_exp.cmp(&other.q_exp))
            .then_with(|| {
                for i in (0..MAX_X).rev() {
                    match self.x_exps[i].cmp(&other.x_exps[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, name: &str, e: i32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if e == 1 {
        f.write_str(name)
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        write_power(f, "q", self.q_exp, &mut first)?;
        for i in (0..MAX_X).rev() {
            write_power(f, &format!("x_{}", i + 1), self.x_exps[i], &mut first)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_adds_exponents() {
        let a = Monomial::new(2, &[1, 0, -1]);
        let b = Monomial::new(-1, &[0, 3, 1]);
        assert_eq!(a.mul(&b), Monomial::new(1, &[1, 3, 0]));
        assert_eq!(a.mul(&a.inv()), Monomial::ONE);
    }

    #[test]
    fn order_is_graded_then_q_first() {
        // same total degree: q beats any x
        assert!(Monomial::q(1) > Monomial::x(3, 1));
        // x_2 > x_1
        assert!(Monomial::x(2, 1) > Monomial::x(1, 1));
        // degree dominates
        assert!(Monomial::x(1, 2) > Monomial::q(1));
    }

    #[test]
    fn display() {
        assert_eq!(Monomial::new(-1, &[2, 0, 1]).to_string(), "q^-1*x_3*x_1^2");
        assert_eq!(Monomial::ONE.to_string(), "1");
    }
}
