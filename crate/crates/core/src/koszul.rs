//! Koszul complexes, their interpolating twists K^I, cones and the two
//! iterated-cone presentations, all at the level of graded virtual characters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::{Monomial, Poly};
use crate::equivariant::Character;
use crate::report::{Check, CheckList};

/// Cohomological degree ↦ virtual character of the term in that degree.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedComplex {
    nvars: usize,
    terms: BTreeMap<i32, Poly>,
}

impl GradedComplex {
    pub fn zero(nvars: usize) -> Self {
        GradedComplex { nvars, terms: BTreeMap::new() }
    }

    /// A single term in degree `degree`.
    pub fn single(degree: i32, character: Poly) -> Self {
        let mut c = Self::zero(character.nvars());
        c.add_term(degree, &character);
        c
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, degree: i32, character: &Poly) {
        let slot = self.terms.entry(degree).or_insert_with(|| Poly::zero(self.nvars));
        *slot = slot.try_add(character).expect("variable count");
        if slot.is_zero() {
            self.terms.remove(&degree);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Poly)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn term(&self, degree: i32) -> Poly {
        self.terms.get(&degree).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// `C[n]`: the term in homological index i moves to index i + n, i.e.
    /// cohomological degree d becomes d − n.
    pub fn shift(&self, n: i32) -> Self {
        GradedComplex { nvars: self.nvars, terms: self.terms.iter().map(|(d, c)| (d - n, c.clone())).collect() }
    }

    pub fn twist(&self, m: &Monomial) -> Self {
        GradedComplex { nvars: self.nvars, terms: self.terms.iter().map(|(d, c)| (*d, c.mul_monomial(m))).collect() }
    }

    pub fn twist_q(&self, e: i32) -> Self {
        self.twist(&Monomial::q(e))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(*d, c);
        }
        out
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (da, ca) in &self.terms {
            for (db, cb) in &other.terms {
                out.add_term(da + db, &ca.try_mul(cb).expect("variable count"));
            }
        }
        out
    }

    /// Alternating sum `Σ_d (−1)^d [C^d]`.
    pub fn class(&self) -> Poly {
        let mut acc = Poly::zero(self.nvars);
        for (d, c) in &self.terms {
            let c = if d.rem_euclid(2) == 1 { c.neg() } else { c.clone() };
            acc = acc.try_add(&c).expect("variable count");
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(d, c)| json!({ "degree": d, "character": c.to_string() })).collect();
        json!({ "terms": terms })
    }
}

impl fmt::Display for GradedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (d, c) in self.terms.iter().rev() {
            writeln!(f, "[{d}] {c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Line bundle `L`, vector bundle `V` and index set `I` of a twisted Koszul complex.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistData {
    pub l: Monomial,
    pub v: Character,
    pub i: BTreeSet<i32>,
}

impl TwistData {
    /// `V` with weights `x_1..x_r` and `L = x_{r+1}`: algebraically independent.
    pub fn generic(rank: usize, i: BTreeSet<i32>) -> Self {
        let nvars = rank + 1;
        let v = Character::new(nvars, (1..=rank).map(|j| Monomial::x(j, 1)).collect());
        TwistData { l: Monomial::x(rank + 1, 1), v, i }
    }
}

/// `e_j` of the weights, as a virtual character.
fn elementary(weights: &[Monomial], j: usize, nvars: usize) -> Poly {
    let mut e = vec![Poly::zero(nvars); j + 1];
    e[0] = Poly::one(nvars);
    for w in weights {
        for t in (1..=j).rev() {
            let add = e[t - 1].mul_monomial(w);
            e[t] = e[t].try_add(&add).expect("variable count");
        }
    }
    e.pop().unwrap()
}

/// `Λ^j V^∨` as a character.
pub fn exterior_power_dual(v: &Character, j: usize) -> Poly {
    elementary(v.dual().weights(), j, v.nvars())
}

/// `K(V^∨, s)`: `Λ^j V^∨` in cohomological degree −j.
pub fn koszul_complex(v: &Character) -> GradedComplex {
    let mut c = GradedComplex::zero(v.nvars());
    for j in 0..=v.rank() {
        c.add_term(-(j as i32), &exterior_power_dual(v, j));
    }
    c
}

/// `d(I, j) = |I ∩ [1, j]|`.
pub fn d_of(i: &BTreeSet<i32>, j: i32) -> i32 {
    if j < 1 {
        return 0;
    }
    i.range(1..=j).count() as i32
}

/// `K^I(L; V^∨)`: `Λ^j V^∨ ⊗ (L^∨)^{d(I,j)}` in cohomological degree −j.
pub fn generalized_koszul(i: &BTreeSet<i32>, l: &Monomial, v: &Character) -> GradedComplex {
    let mut c = GradedComplex::zero(v.nvars());
    for j in 0..=v.rank() {
        let tw = l.pow(-d_of(i, j as i32));
        c.add_term(-(j as i32), &exterior_power_dual(v, j).mul_monomial(&tw));
    }
    c
}

/// `K(L^∨, f) = [L^∨ → O]`.
pub fn line_koszul(l: &Monomial, nvars: usize) -> GradedComplex {
    koszul_complex(&Character::new(nvars, vec![*l]))
}

/// Cone of a map `src → tgt`: `tgt ⊕ src[1]`.
pub fn cone_class(src: &GradedComplex, tgt: &GradedComplex) -> GradedComplex {
    tgt.direct_sum(&src.shift(1))
}

fn interval(a: i32, b: i32) -> BTreeSet<i32> {
    (a..=b).collect()
}

/// Source of `φ_{i,I}`: `(K(L^∨,f) ⊗ (L^∨)^{d(I,i)−1} ⊗ Λ^i V^∨)[1−i]`, the
/// twist read off the defining diagram.
pub fn cone_add_source(i: i32, set: &BTreeSet<i32>, l: &Monomial, v: &Character) -> GradedComplex {
    let n = v.nvars();
    let lam = GradedComplex::single(0, exterior_power_dual(v, i as usize));
    line_koszul(l, n).tensor(&lam).twist(&l.pow(-(d_of(set, i) - 1))).shift(1 - i)
}

/// Class-level check of `C(φ_{i,I}) ≃ K^{I'}`, `I' = (I ∖ {i}) ∪ {i+1}`.
pub fn cone_add_check(i: i32, set: &BTreeSet<i32>, l: &Monomial, v: &Character) -> Check {
    let name = format!("cone-add i={i} I={set:?}");
    if !set.contains(&i) || set.contains(&(i + 1)) {
        return Check::fail(&name, "requires i in I and i+1 not in I");
    }
    let cone = cone_class(&cone_add_source(i, set, l, v), &generalized_koszul(set, l, v));
    let mut next = set.clone();
    next.remove(&i);
    next.insert(i + 1);
    let expected = generalized_koszul(&next, l, v);
    let (a, b) = (cone.class(), expected.class());
    if a == b {
        Check::pass(&name, format!("class {a}"))
    } else {
        Check::fail(&name, format!("cone class {a} vs K^I' class {b}"))
    }
}

/// All `(i, I)` with `I ⊆ [1, r+1]`, `i ∈ I ∩ [1, r]`, `i+1 ∉ I`.
pub fn cone_add_cases(rank: usize) -> Vec<(i32, BTreeSet<i32>)> {
    let top = rank as i32 + 1;
    let mut out = Vec::new();
    for mask in 0u32..(1 << top) {
        let set: BTreeSet<i32> = (1..=top).filter(|e| mask & (1 << (e - 1)) != 0).collect();
        for &i in set.iter().filter(|&&i| i <= rank as i32) {
            if !set.contains(&(i + 1)) {
                out.push((i, set.clone()));
            }
        }
    }
    out
}

/// `ψ⁻_{i,j}` pairs: `1 ≤ i ≤ k`, `N−k+i ≤ j ≤ N`.
pub fn psi_minus(n: usize, k: usize) -> Vec<(i32, i32)> {
    let (n, k) = (n as i32, k as i32);
    (1..=k).flat_map(|i| (n - k + i..=n).map(move |j| (i, j))).collect()
}

/// `ψ⁺_{i,j}` pairs: `1 ≤ i ≤ N−k`, `1 ≤ j ≤ N−k−i+1`.
pub fn psi_plus(n: usize, k: usize) -> Vec<(i32, i32)> {
    let m = n as i32 - k as i32;
    (1..=m).flat_map(|i| (1..=m - i + 1).map(move |j| (i, j))).collect()
}

/// `W_{ψ⁻_{i,j}} = (L^∨)^{j−i} ⊗ Λ^j V^∨ [1−j]`.
pub fn w_minus(i: i32, j: i32, l: &Monomial, v: &Character) -> GradedComplex {
    GradedComplex::single(0, exterior_power_dual(v, j as usize)).twist(&l.pow(-(j - i))).shift(1 - j)
}

/// `W_{ψ⁺_{i,j}} = (L^∨)^{−i} ⊗ Λ^{j−1} V^∨ [−j]`.
pub fn w_plus(i: i32, j: i32, l: &Monomial, v: &Character) -> GradedComplex {
    GradedComplex::single(0, exterior_power_dual(v, (j - 1) as usize)).twist(&l.pow(i)).shift(-j)
}

/// The two iterated cones: seeded at `K(V⊗L, fg)` and at `K(V, g)`, each step
/// coning `K(L^∨, f) ⊗ W_ψ` into the running complex.
pub fn iterated_cone_classes(n: usize, k: usize, l: &Monomial, v: &Character) -> (GradedComplex, GradedComplex) {
    assert_eq!(v.rank(), n, "rank(V) must equal N");
    assert!(k <= n, "k out of range");
    let nv = v.nvars();
    let line = line_koszul(l, nv);
    let mut minus = generalized_koszul(&interval(1, n as i32), l, v);
    for (i, j) in psi_minus(n, k) {
        minus = cone_class(&line.tensor(&w_minus(i, j, l, v)), &minus);
    }
    let mut plus = koszul_complex(v);
    for (i, j) in psi_plus(n, k) {
        plus = cone_class(&line.tensor(&w_plus(i, j, l, v)), &plus);
    }
    (minus, plus)
}

/// Endpoints, every cone-add case and both iterated presentations for one rank and k.
pub fn koszul_battery(rank: usize, k: usize) -> CheckList {
    let mut out = CheckList::default();
    let td = TwistData::generic(rank, BTreeSet::new());
    let (l, v) = (&td.l, &td.v);
    let nv = v.nvars();

    let lo = generalized_koszul(&BTreeSet::new(), l, v);
    out.push(Check::from_bool("K^{} = K(V)", lo == koszul_complex(v), "term by term"));
    let hi = generalized_koszul(&interval(1, rank as i32), l, v);
    out.push(Check::from_bool("K^[1,r] = K(V(x)L)", hi == koszul_complex(&v.twist(l)), "term by term"));
    let euler = v.weights().iter().fold(Poly::one(nv), |acc, w| {
        let f = Poly::from_terms(nv, [(Monomial::ONE, BigInt::from(1)), (w.inv(), BigInt::from(-1))]);
        acc.try_mul(&f).unwrap()
    });
    out.push(Check::from_bool("class K(V) = prod(1 - w^-1)", koszul_complex(v).class() == euler, "expanded product"));

    let cases = cone_add_cases(rank);
    let failed: Vec<Check> = cases.iter().map(|(i, s)| cone_add_check(*i, s, l, v)).filter(|c| !c.passed()).collect();
    out.push(match failed.first() {
        None => Check::pass("cone-add", format!("{} cases", cases.len())),
        Some(c) => Check::fail("cone-add", c.witness.clone().unwrap_or_default()),
    });

    let target = generalized_koszul(&interval(1, rank as i32 - k as i32), l, v);
    let (minus, plus) = iterated_cone_classes(rank, k, l, v);
    let tc = target.class();
    let report = |name: &str, got: Poly, want: &Poly, steps: usize| {
        if got == *want {
            Check::pass(name, format!("{steps} cones, class {want}"))
        } else {
            Check::fail(name, format!("got {got}, expected {want}"))
        }
    };
    out.push(report("cone- = K^[1,N-k]", minus.class(), &tc, psi_minus(rank, k).len()));
    let twisted = tc.mul_monomial(&l.pow(rank as i32 - k as i32));
    out.push(report("cone+ = K^[1,N-k] (x) (L^v)^(k-N)", plus.class(), &twisted, psi_plus(rank, k).len()));
    out.note("psi- ranges 1<=i<=k, N-k+i<=j<=N; psi+ ranges 1<=i<=N-k, 1<=j<=N-k-i+1");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i32]) -> BTreeSet<i32> {
        v.iter().copied().collect()
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_of(&set(&[1, 2]), 3), 2);
        assert_eq!(d_of(&set(&[]), 7), 0);
        assert_eq!(d_of(&set(&[2, 5]), 4), 1);
    }

    #[test]
    fn rank_one_and_two() {
        let w = Monomial::x(1, 1);
        let c = koszul_complex(&Character::new(1, vec![w]));
        assert_eq!(c.term(0), Poly::one(1));
        assert_eq!(c.term(-1), Poly::monomial(1, w.inv()));
        let td = TwistData::generic(2, set(&[2]));
        let k = generalized_koszul(&td.i, &td.l, &td.v);
        assert_eq!(k.term(-1), exterior_power_dual(&td.v, 1));
        assert_eq!(k.term(-2), exterior_power_dual(&td.v, 2).mul_monomial(&td.l.inv()));
    }

    #[test]
    fn shift_signs() {
        let td = TwistData::generic(2, set(&[]));
        let a = koszul_complex(&td.v);
        assert_eq!(a.shift(1).class(), a.class().neg());
        assert_eq!(a.shift(2).shift(-5).class(), a.shift(-3).class());
        assert!(cone_class(&a, &a).class().is_zero());
    }

    #[test]
    fn statement_twist_is_off_by_one() {
        let td = TwistData::generic(3, set(&[1, 2]));
        let v = &td.v;
        let l = &td.l;
        assert!(cone_add_check(2, &td.i, l, v).passed());
        let literal = cone_add_source(2, &td.i, l, v).twist(&l.inv());
        let cone = cone_class(&literal, &generalized_koszul(&td.i, l, v));
        assert_ne!(cone.class(), generalized_koszul(&set(&[1, 3]), l, v).class());
    }

    #[test]
    fn battery_small() {
        for r in 0..=3 {
            for k in 0..=r {
                let b = koszul_battery(r, k);
                assert!(b.all_passed(), "r={r} k={k} {b:?}");
            }
        }
    }
}
