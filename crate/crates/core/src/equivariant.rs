//! Torus-fixed-point model of the localized equivariant K-theory of Gr(k,N)
//! and of the bundles Y = Hom(C^N, τ) over it.
//!
//! The torus is `(C*)^N × C*`, with `x_i` the weights of the coordinate
//! lines of C^N and `q` scaling the fibers of Y with weight 2.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::arith::{ArithError, Monomial, Poly, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KError {
    #[error("k = {k} outside 0..={n}")]
    KOutOfRange { n: usize, k: usize },
    #[error("trivial weight in character: fixed locus is not isolated")]
    TrivialWeight,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// A coordinate subspace `span{e_i : i ∈ S}`, stored as a sorted 1-based subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPoint {
    subset: Vec<usize>,
}

impl FixedPoint {
    pub fn new(mut subset: Vec<usize>) -> Self {
        subset.sort_unstable();
        subset.dedup();
        assert!(subset.first().is_none_or(|&i| i >= 1), "indices are 1-based");
        FixedPoint { subset }
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn k(&self) -> usize {
        self.subset.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.subset.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &FixedPoint) -> bool {
        self.subset.iter().all(|&i| other.contains(i))
    }

    pub fn complement(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|&i| !self.contains(i)).collect()
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.subset.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(idx.clone());
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - (k - 1 - p)) else {
            return out;
        };
        idx[p] += 1;
        for r in p + 1..k {
            idx[r] = idx[r - 1] + 1;
        }
    }
}

/// All `C(N,k)` fixed points of Gr(k,N), lexicographically.
pub fn fixed_points(n: usize, k: usize) -> Result<Vec<FixedPoint>, KError> {
    if k > n {
        return Err(KError::KOutOfRange { n, k });
    }
    Ok(combinations(n, k).into_iter().map(FixedPoint::new).collect())
}

/// A torus representation as a multiset of weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    nvars: usize,
    weights: Vec<Monomial>,
}

impl Character {
    pub fn new(nvars: usize, mut weights: Vec<Monomial>) -> Self {
        weights.sort();
        Character { nvars, weights }
    }

    pub fn empty(nvars: usize) -> Self {
        Character { nvars, weights: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn weights(&self) -> &[Monomial] {
        &self.weights
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn union(&self, other: &Character) -> Character {
        let mut w = self.weights.clone();
        w.extend_from_slice(&other.weights);
        Character::new(self.nvars, w)
    }

    pub fn dual(&self) -> Character {
        Character::new(self.nvars, self.weights.iter().map(Monomial::inv).collect())
    }

    pub fn twist(&self, m: &Monomial) -> Character {
        Character::new(self.nvars, self.weights.iter().map(|w| w.mul(m)).collect())
    }

    /// Multiset difference; `None` unless `other` is contained in `self`.
    pub fn minus(&self, other: &Character) -> Option<Character> {
        let mut w = self.weights.clone();
        for o in &other.weights {
            let pos = w.iter().position(|x| x == o)?;
            w.remove(pos);
        }
        Some(Character::new(self.nvars, w))
    }

    /// Split into (self ∖ common, other ∖ common).
    pub fn cancel_common(&self, other: &Character) -> (Character, Character) {
        let mut a = self.weights.clone();
        let mut b = Vec::new();
        for o in &other.weights {
            match a.iter().position(|x| x == o) {
                Some(p) => {
                    a.remove(p);
                }
                None => b.push(*o),
            }
        }
        (Character::new(self.nvars, a), Character::new(self.nvars, b))
    }

    pub fn has_trivial_weight(&self) -> bool {
        self.weights.iter().any(Monomial::is_one)
    }

    /// Sum of the weights as a Laurent polynomial.
    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.nvars, self.weights.iter().map(|w| (*w, 1.into())))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn ratio(i: usize, j: usize) -> Monomial {
    Monomial::x(i, 1).div(&Monomial::x(j, 1))
}

/// Weights `x_j / x_i`, `i ∈ S`, `j ∉ S`: the tangent space Hom(τ, C^N/τ) of Gr(k,N) at S.
pub fn tangent_character_gr(s: &FixedPoint, n: usize) -> Character {
    let comp = s.complement(n);
    let w = s.subset().iter().flat_map(|&i| comp.iter().map(move |&j| ratio(j, i))).collect();
    Character::new(n, w)
}

/// Weights `q² x_i / x_j`, `i ∈ S`, `j = 1..N`: the fiber Hom(C^N, τ) of Y at S.
pub fn fiber_character(s: &FixedPoint, n: usize) -> Character {
    let w = s
        .subset()
        .iter()
        .flat_map(|&i| (1..=n).map(move |j| ratio(i, j).mul(&Monomial::q(2))))
        .collect();
    Character::new(n, w)
}

/// Tangent space of Y at the fixed point `(S, X = 0)`.
pub fn tangent_character_y(s: &FixedPoint, n: usize, k: usize) -> Character {
    assert_eq!(s.k(), k, "fixed point of the wrong dimension");
    tangent_character_gr(s, n).union(&fiber_character(s, n))
}

fn one_minus_inverse(n: usize, w: &Monomial) -> Poly {
    Poly::from_terms(n, [(Monomial::ONE, 1.into()), (w.inv(), (-1).into())])
}

/// K-theoretic Euler class `∏ (1 − w⁻¹)`.
pub fn euler_class(c: &Character) -> Result<RationalFunction, KError> {
    euler_ratio(c, &Character::empty(c.nvars()))
}

/// `euler_class(num) / euler_class(den)` with common weights cancelled first.
pub fn euler_ratio(num: &Character, den: &Character) -> Result<RationalFunction, KError> {
    if num.has_trivial_weight() || den.has_trivial_weight() {
        return Err(KError::TrivialWeight);
    }
    let n = num.nvars();
    let (a, b) = num.cancel_common(den);
    let mut top = Poly::one(n);
    for w in a.weights() {
        top = top.try_mul(&one_minus_inverse(n, w))?;
    }
    let mut bottom = Poly::one(n);
    for w in b.weights() {
        bottom = bottom.try_mul(&one_minus_inverse(n, w))?;
    }
    Ok(RationalFunction::new(top, bottom)?)
}

/// `det τ^m` at S: `∏_{i∈S} x_i^m`.
pub fn restrict_det_tau_power(s: &FixedPoint, m: i32) -> Monomial {
    s.subset().iter().fold(Monomial::ONE, |acc, &i| acc.mul(&Monomial::x(i, m)))
}

/// Which fixed-point space a localized class lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Grassmannian { n: usize, k: usize },
    Y { n: usize, k: usize },
}

impl Space {
    pub fn n(&self) -> usize {
        match *self {
            Space::Grassmannian { n, .. } | Space::Y { n, .. } => n,
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            Space::Grassmannian { k, .. } | Space::Y { k, .. } => k,
        }
    }

    pub fn tangent(&self, s: &FixedPoint) -> Character {
        match *self {
            Space::Grassmannian { n, .. } => tangent_character_gr(s, n),
            Space::Y { n, k } => tangent_character_y(s, n, k),
        }
    }
}

/// A class given by its restrictions to the fixed points.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedClass {
    pub space: Space,
    pub values: BTreeMap<FixedPoint, RationalFunction>,
}

impl LocalizedClass {
    pub fn from_fn(space: Space, f: impl Fn(&FixedPoint) -> RationalFunction) -> Result<Self, KError> {
        let values = fixed_points(space.n(), space.k())?.into_iter().map(|s| {
            let v = f(&s);
            (s, v)
        });
        Ok(LocalizedClass { space, values: values.collect() })
    }

    pub fn unit(space: Space) -> Result<Self, KError> {
        Self::from_fn(space, |_| RationalFunction::one(space.n()))
    }

    pub fn det_tau_power(space: Space, m: i32) -> Result<Self, KError> {
        Self::from_fn(space, |s| RationalFunction::from_monomial(space.n(), restrict_det_tau_power(s, m)))
    }

    pub fn to_json(&self) -> Value {
        let values: serde_json::Map<String, Value> =
            self.values.iter().map(|(s, v)| (s.to_string(), Value::String(v.to_string()))).collect();
        let (kind, n, k) = match self.space {
            Space::Grassmannian { n, k } => ("grassmannian", n, k),
            Space::Y { n, k } => ("Y", n, k),
        };
        json!({ "space": kind, "n": n, "k": k, "values": values })
    }
}

/// Localization sum `Σ_S cls(S) / euler(T_S)`.
pub fn pushforward_to_point(cls: &LocalizedClass) -> Result<RationalFunction, KError> {
    let n = cls.space.n();
    let mut acc = RationalFunction::zero(n);
    for (s, v) in &cls.values {
        let e = euler_class(&cls.space.tangent(s))?;
        acc = acc.try_add(&v.try_div(&e)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(v: &[usize]) -> FixedPoint {
        FixedPoint::new(v.to_vec())
    }

    #[test]
    fn fixed_point_enumeration() {
        assert_eq!(fixed_points(2, 1).unwrap(), vec![fp(&[1]), fp(&[2])]);
        assert_eq!(fixed_points(4, 2).unwrap().len(), 6);
        assert_eq!(fixed_points(3, 0).unwrap(), vec![fp(&[])]);
        assert!(fixed_points(2, 3).is_err());
    }

    #[test]
    fn tangent_examples() {
        let t = tangent_character_y(&fp(&[1]), 1, 1);
        assert_eq!(t.weights(), &[Monomial::q(2)]);
        let t = tangent_character_y(&fp(&[1]), 2, 1);
        let expected = Character::new(2, vec![Monomial::new(0, &[-1, 1]), Monomial::q(2), Monomial::new(2, &[1, -1])]);
        assert_eq!(t, expected);
        let t = tangent_character_y(&fp(&[1, 3]), 4, 2);
        assert_eq!(t.rank(), 2 * 2 + 2 * 4);
    }

    #[test]
    fn euler_examples() {
        let e = euler_class(&Character::new(0, vec![Monomial::q(2)])).unwrap();
        assert_eq!(e, RationalFunction::parse("1 - q^-2", 0).unwrap());
        let e = euler_class(&Character::new(2, vec![Monomial::new(0, &[-1, 1])])).unwrap();
        assert_eq!(e, RationalFunction::parse("1 - x_1/x_2", 2).unwrap());
        assert_eq!(euler_class(&Character::new(1, vec![Monomial::ONE])), Err(KError::TrivialWeight));
    }

    #[test]
    fn projective_line() {
        let p1 = Space::Grassmannian { n: 2, k: 1 };
        assert!(pushforward_to_point(&LocalizedClass::unit(p1).unwrap()).unwrap().is_one());
        assert!(pushforward_to_point(&LocalizedClass::det_tau_power(p1, 1).unwrap()).unwrap().is_zero());
        let pt = Space::Grassmannian { n: 3, k: 0 };
        assert!(pushforward_to_point(&LocalizedClass::unit(pt).unwrap()).unwrap().is_one());
    }

    #[test]
    fn det_tau_restrictions() {
        assert_eq!(restrict_det_tau_power(&fp(&[1, 3]), 1), Monomial::new(0, &[1, 0, 1]));
        assert_eq!(restrict_det_tau_power(&fp(&[]), 5), Monomial::ONE);
        assert_eq!(restrict_det_tau_power(&fp(&[2]), -3), Monomial::x(2, -3));
    }
}
