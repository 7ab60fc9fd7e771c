//! Probabilistic identity checks by exact evaluation at seeded random points.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ratfunc::RationalFunction;
use super::ArithError;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_POINTS: usize = 8;

/// A point assigning distinct nonzero rationals to `q, x_1..x_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalPoint {
    pub q: BigRational,
    pub x: Vec<BigRational>,
}

/// Deterministic source of evaluation points.
pub struct PointSampler {
    rng: ChaCha8Rng,
    nvars: usize,
}

impl PointSampler {
    pub fn new(nvars: usize, seed: u64) -> Self {
        PointSampler { rng: ChaCha8Rng::seed_from_u64(seed), nvars }
    }

    pub fn next_point(&mut self) -> EvalPoint {
        loop {
            let mut vals: Vec<BigRational> = Vec::with_capacity(self.nvars + 1);
            for _ in 0..=self.nvars {
                let num: i64 = self.rng.gen_range(1..=997) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
                let den: i64 = self.rng.gen_range(1..=89);
                vals.push(BigRational::new(BigInt::from(num), BigInt::from(den)));
            }
            let distinct = vals.iter().enumerate().all(|(i, a)| vals[..i].iter().all(|b| b != a));
            if distinct {
                let q = vals.pop().unwrap();
                return EvalPoint { q, x: vals };
            }
        }
    }
}

/// Outcome of a Schwartz–Zippel comparison.
#[derive(Clone, Debug, PartialEq)]
pub enum IdentityCheck {
    Holds { points: usize },
    Fails { point: EvalPoint, lhs: BigRational, rhs: BigRational },
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds { .. })
    }
}

/// Compare `lhs` and `rhs` at `points` seeded random points, skipping poles.
pub fn check_identity(
    lhs: &RationalFunction,
    rhs: &RationalFunction,
    seed: u64,
    points: usize,
) -> Result<IdentityCheck, ArithError> {
    if lhs.nvars() != rhs.nvars() {
        return Err(ArithError::VarCountMismatch { left: lhs.nvars(), right: rhs.nvars() });
    }
    let mut sampler = PointSampler::new(lhs.nvars(), seed);
    let mut used = 0;
    let mut attempts = 0;
    while used < points {
        attempts += 1;
        if attempts > 64 * points {
            return Err(ArithError::Pole);
        }
        let p = sampler.next_point();
        let (a, b) = match (lhs.eval_at(&p.q, &p.x), rhs.eval_at(&p.q, &p.x)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(ArithError::Pole), _) | (_, Err(ArithError::Pole)) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        if a != b {
            return Ok(IdentityCheck::Fails { point: p, lhs: a, rhs: b });
        }
        used += 1;
    }
    Ok(IdentityCheck::Holds { points: used })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_reproducible() {
        let mut a = PointSampler::new(3, DEFAULT_SEED);
        let mut b = PointSampler::new(3, DEFAULT_SEED);
        for _ in 0..5 {
            assert_eq!(a.next_point(), b.next_point());
        }
    }

    #[test]
    fn detects_equal_and_unequal() {
        let l = RationalFunction::parse("x_1/(x_2 - x_1) + x_2/(x_1 - x_2)", 2).unwrap();
        let r = RationalFunction::constant(2, -1);
        assert!(check_identity(&l, &r, DEFAULT_SEED, DEFAULT_POINTS).unwrap().holds());
        let r2 = RationalFunction::parse("-1 + q*(x_1 - x_2)^7", 2).unwrap();
        assert!(!check_identity(&l, &r2, DEFAULT_SEED, DEFAULT_POINTS).unwrap().holds());
    }
}
