//! U_q(gl(1|1)) on V^{⊗N}: generator matrices, the iterated coproduct with
//! the super sign rule, relation checks and weight blocks.

use std::fmt;

use serde_json::{json, Value};

use crate::arith::{LaurentScalar, Ring};
use crate::linalg::Matrix;
use crate::report::{Check, CheckList};

/// A tensor product of basis vectors, `letters[i]` is 0 for v₀ and 1 for v₁.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisWord {
    letters: Vec<u8>,
}

impl BasisWord {
    pub fn new(letters: Vec<u8>) -> Self {
        assert!(letters.iter().all(|&l| l <= 1), "letters are 0 or 1");
        BasisWord { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of odd letters.
    pub fn k(&self) -> usize {
        self.letters.iter().filter(|&&l| l == 1).count()
    }

    pub fn parity(&self) -> u8 {
        (self.k() % 2) as u8
    }

    pub fn weight(&self) -> i32 {
        self.len() as i32 - 2 * self.k() as i32
    }

    fn binary_value(&self) -> u64 {
        self.letters.iter().fold(0, |acc, &l| (acc << 1) | l as u64)
    }

    /// Parity of the letters strictly before slot `j`.
    fn parity_before(&self, j: usize) -> u8 {
        (self.letters[..j].iter().map(|&l| l as usize).sum::<usize>() % 2) as u8
    }

    /// 1-based positions of the odd letters.
    pub fn odd_positions(&self) -> Vec<usize> {
        self.letters.iter().enumerate().filter(|(_, &l)| l == 1).map(|(i, _)| i + 1).collect()
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All `2^N` words, sorted by number of odd letters and then by binary value.
pub fn basis(n: usize) -> Vec<BasisWord> {
    let mut words: Vec<BasisWord> = (0..1u64 << n)
        .map(|v| BasisWord::new((0..n).map(|i| ((v >> (n - 1 - i)) & 1) as u8).collect()))
        .collect();
    words.sort_by_key(|w| (w.k(), w.binary_value()));
    words
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorName {
    E,
    F,
    K,
    H,
    KInv,
    HInv,
}

impl GeneratorName {
    pub fn is_odd(self) -> bool {
        matches!(self, GeneratorName::E | GeneratorName::F)
    }

    /// Change of weight.
    pub fn weight_shift(self) -> i32 {
        match self {
            GeneratorName::E => 2,
            GeneratorName::F => -2,
            _ => 0,
        }
    }
}

impl fmt::Display for GeneratorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorName::E => "E",
            GeneratorName::F => "F",
            GeneratorName::K => "K",
            GeneratorName::H => "H",
            GeneratorName::KInv => "K^-1",
            GeneratorName::HInv => "H^-1",
        })
    }
}

fn zero() -> LaurentScalar {
    LaurentScalar::zero()
}

/// The 2×2 matrix of a generator in the basis (v₀, v₁).
pub fn generator_on_v(g: GeneratorName) -> Matrix<LaurentScalar> {
    let mut m = Matrix::zeros(2, 2, &zero());
    match g {
        GeneratorName::E => m.set(0, 1, LaurentScalar::q_minus_inv()),
        GeneratorName::F => m.set(1, 0, LaurentScalar::one()),
        GeneratorName::K | GeneratorName::KInv => {
            let e = if g == GeneratorName::K { 1 } else { -1 };
            m.set(0, 0, LaurentScalar::q_pow(e));
            m.set(1, 1, LaurentScalar::q_pow(e));
        }
        GeneratorName::H | GeneratorName::HInv => {
            let e = if g == GeneratorName::H { 1 } else { -1 };
            m.set(0, 0, LaurentScalar::q_pow(e));
            m.set(1, 1, LaurentScalar::q_pow(-e));
        }
    }
    m
}

/// Image of one basis word under `g`, as `(word, coefficient)` pairs.
fn act_on_word(g: GeneratorName, w: &BasisWord) -> Vec<(BasisWord, LaurentScalar)> {
    let n = w.len() as i32;
    let k = w.k() as i32;
    match g {
        GeneratorName::K => vec![(w.clone(), LaurentScalar::q_pow(n))],
        GeneratorName::KInv => vec![(w.clone(), LaurentScalar::q_pow(-n))],
        GeneratorName::H => vec![(w.clone(), LaurentScalar::q_pow(n - 2 * k))],
        GeneratorName::HInv => vec![(w.clone(), LaurentScalar::q_pow(2 * k - n))],
        GeneratorName::E | GeneratorName::F => {
            // E acts as Σ_j 1⊗…⊗E⊗K⁻¹⊗…⊗K⁻¹, F as Σ_j K⊗…⊗K⊗F⊗1⊗…⊗1
            let (from, to) = if g == GeneratorName::E { (1, 0) } else { (0, 1) };
            let mut out = Vec::new();
            for j in 0..w.len() {
                if w.letters[j] != from {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters[j] = to;
                let mut c = if g == GeneratorName::E {
                    LaurentScalar::q_minus_inv().shift(-(n - 1 - j as i32))
                } else {
                    LaurentScalar::q_pow(j as i32)
                };
                if w.parity_before(j) == 1 {
                    c = -&c;
                }
                out.push((BasisWord::new(letters), c));
            }
            out
        }
    }
}

/// Matrix of `g` on `V^{⊗N}` in the order of [`basis`].
pub fn coproduct_action(g: GeneratorName, n: usize) -> Matrix<LaurentScalar> {
    let words = basis(n);
    let index = |w: &BasisWord| words.binary_search_by_key(&(w.k(), w.binary_value()), |u| (u.k(), u.binary_value())).unwrap();
    let mut m = Matrix::zeros(words.len(), words.len(), &zero());
    for (col, w) in words.iter().enumerate() {
        for (img, c) in act_on_word(g, w) {
            let row = index(&img);
            let v = m.get(row, col).plus(&c);
            m.set(row, col, v);
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightBlock {
    pub lambda: i32,
    pub k: usize,
    pub words: Vec<BasisWord>,
}

impl WeightBlock {
    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

/// Weight blocks for `λ = N, N−2, …, −N`.
pub fn weight_blocks(n: usize) -> Vec<WeightBlock> {
    let words = basis(n);
    (0..=n)
        .map(|k| WeightBlock {
            lambda: n as i32 - 2 * k as i32,
            k,
            words: words.iter().filter(|w| w.k() == k).cloned().collect(),
        })
        .collect()
}

/// Indices into [`basis`] of the words of weight `λ` (empty if `λ` is not a weight).
pub fn block_indices(n: usize, lambda: i32) -> Vec<usize> {
    basis(n).iter().enumerate().filter(|(_, w)| w.weight() == lambda).map(|(i, _)| i).collect()
}

pub fn is_weight(n: usize, lambda: i32) -> bool {
    lambda.abs() <= n as i32 && (n as i32 - lambda) % 2 == 0
}

/// A weight-graded block of an operator on `V^{⊗N}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepMatrix {
    pub domain_weight: i32,
    pub codomain_weight: i32,
    pub rows: Vec<BasisWord>,
    pub cols: Vec<BasisWord>,
    pub matrix: Matrix<LaurentScalar>,
}

impl RepMatrix {
    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<String>> = (0..self.matrix.rows())
            .map(|i| (0..self.matrix.cols()).map(|j| self.matrix.get(i, j).to_string()).collect())
            .collect();
        json!({
            "domain_weight": self.domain_weight,
            "codomain_weight": self.codomain_weight,
            "rows": self.rows.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "cols": self.cols.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "entries": entries,
        })
    }
}

/// The block `g(λ): (V^{⊗N})_λ → (V^{⊗N})_{λ+shift}`.
pub fn restrict(g: GeneratorName, n: usize, lambda: i32) -> RepMatrix {
    let words = basis(n);
    let target = lambda + g.weight_shift();
    let cols = block_indices(n, lambda);
    let rows = block_indices(n, target);
    let full = coproduct_action(g, n);
    RepMatrix {
        domain_weight: lambda,
        codomain_weight: target,
        rows: rows.iter().map(|&i| words[i].clone()).collect(),
        cols: cols.iter().map(|&i| words[i].clone()).collect(),
        matrix: full.submatrix(&rows, &cols),
    }
}

pub const KH_NOTE: &str = "K acts as q^N on all of V^{⊗N} and H as q^λ on the weight-λ block; \
the alternative assignment K(λ) = q^λ, H(λ) = q^N contradicts EF+FE = K − K^-1 and is not used";

fn matrix_check(name: &str, lhs: &Matrix<LaurentScalar>, rhs: &Matrix<LaurentScalar>) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::pass(name, "exact matrix identity"),
        Some((i, j)) => Check::fail(
            name,
            format!("entry ({i},{j}): lhs = {}, rhs = {}", lhs.get(i, j), rhs.get(i, j)),
        ),
    }
}

/// Relation battery on `V^{⊗N}`.
pub fn verify_relations(n: usize) -> CheckList {
    let e = coproduct_action(GeneratorName::E, n);
    let f = coproduct_action(GeneratorName::F, n);
    let k = coproduct_action(GeneratorName::K, n);
    let kinv = coproduct_action(GeneratorName::KInv, n);
    let h = coproduct_action(GeneratorName::H, n);
    let hinv = coproduct_action(GeneratorName::HInv, n);
    let dim = e.rows();
    let z = Matrix::zeros(dim, dim, &zero());
    let c = LaurentScalar::q_pow(n as i32).minus(&LaurentScalar::q_pow(-(n as i32)));
    let q2 = LaurentScalar::q_pow(2);
    let qm2 = LaurentScalar::q_pow(-2);

    let mut out = CheckList::default();
    out.push(matrix_check("E^2 = 0", &e.mul(&e), &z));
    out.push(matrix_check("F^2 = 0", &f.mul(&f), &z));
    out.push(matrix_check(
        &format!("EF+FE = {c}"),
        &e.mul(&f).add(&f.mul(&e)),
        &Matrix::scalar(dim, &c),
    ));
    out.push(matrix_check("EF+FE = K - K^-1", &e.mul(&f).add(&f.mul(&e)), &k.sub(&kinv)));
    out.push(matrix_check("H E H^-1 = q^2 E", &h.mul(&e).mul(&hinv), &e.scale(&q2)));
    out.push(matrix_check("H F H^-1 = q^-2 F", &h.mul(&f).mul(&hinv), &f.scale(&qm2)));
    let central = [(&e, "E"), (&f, "F"), (&h, "H")]
        .iter()
        .map(|(g, name)| matrix_check(&format!("K{name} = {name}K"), &k.mul(g), &g.mul(&k)))
        .find(|c| !c.passed())
        .unwrap_or_else(|| Check::pass("K central", "KE = EK, KF = FK, KH = HK"));
    out.push(central);
    out.note(KH_NOTE);
    out
}

/// Antipode on generators as 2×2 matrices on V: `S(E) = −EK`, `S(F) = −K⁻¹F`,
/// `S(K) = K⁻¹`, `S(H) = H⁻¹`.
pub fn antipode_on_v(g: GeneratorName) -> Matrix<LaurentScalar> {
    let m = generator_on_v;
    match g {
        GeneratorName::E => m(GeneratorName::E).mul(&m(GeneratorName::K)).neg(),
        GeneratorName::F => m(GeneratorName::KInv).mul(&m(GeneratorName::F)).neg(),
        GeneratorName::K => m(GeneratorName::KInv),
        GeneratorName::KInv => m(GeneratorName::K),
        GeneratorName::H => m(GeneratorName::HInv),
        GeneratorName::HInv => m(GeneratorName::H),
    }
}

/// Antipode axioms `m(S⊗1)Δ = m(1⊗S)Δ = ε` on E and F, plus the super
/// anti-homomorphism property on `E² = 0` and `EF+FE = K − K⁻¹`.
pub fn verify_antipode() -> CheckList {
    use GeneratorName::*;
    let m = generator_on_v;
    let s = antipode_on_v;
    let id = Matrix::identity(2, &zero());
    let z = Matrix::zeros(2, 2, &zero());
    let mut out = CheckList::default();
    // Δ(E) = E⊗K⁻¹ + 1⊗E, Δ(F) = F⊗1 + K⊗F
    out.push(matrix_check("S(E)K^-1 + S(1)E = 0", &s(E).mul(&m(KInv)).add(&m(E)), &z));
    out.push(matrix_check("E S(K^-1) + S(E) = 0", &m(E).mul(&s(KInv)).add(&s(E)), &z));
    out.push(matrix_check("S(F) + S(K)F = 0", &s(F).add(&s(K).mul(&m(F))), &z));
    out.push(matrix_check("F + K S(F) = 0", &m(F).add(&m(K).mul(&s(F))), &z));
    out.push(matrix_check("S(K)K = 1", &s(K).mul(&m(K)), &id));
    out.push(matrix_check("S(E)^2 = 0", &s(E).mul(&s(E)), &z));
    out.push(matrix_check(
        "-(S(F)S(E) + S(E)S(F)) = S(K) - S(K^-1)",
        &s(F).mul(&s(E)).add(&s(E).mul(&s(F))).neg(),
        &s(K).sub(&s(KInv)),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_order() {
        let b: Vec<String> = basis(2).iter().map(|w| w.to_string()).collect();
        assert_eq!(b, ["00", "01", "10", "11"]);
    }

    #[test]
    fn two_site_e_on_v1v1() {
        let e = coproduct_action(GeneratorName::E, 2);
        // columns/rows: 00, 01, 10, 11
        let qmi = LaurentScalar::q_minus_inv();
        assert_eq!(*e.get(1, 3), qmi.shift(-1));
        assert_eq!(*e.get(2, 3), -&qmi);
    }

    #[test]
    fn relations_small() {
        for n in 1..=3 {
            let r = verify_relations(n);
            assert!(r.all_passed(), "{r:?}");
        }
        assert!(verify_antipode().all_passed());
    }

    #[test]
    fn restriction_examples() {
        let f = restrict(GeneratorName::F, 1, 1);
        assert_eq!(f.matrix.rows(), 1);
        assert!(f.matrix.get(0, 0).is_one());
        let f = restrict(GeneratorName::F, 1, -1);
        assert_eq!((f.matrix.rows(), f.matrix.cols()), (0, 1));
        let e = restrict(GeneratorName::E, 2, 0);
        assert_eq!((e.matrix.rows(), e.matrix.cols()), (1, 2));
    }
}
