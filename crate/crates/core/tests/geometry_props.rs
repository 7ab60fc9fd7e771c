use std::collections::BTreeSet;

use proptest::prelude::*;

use superk::arith::{Monomial, RationalFunction};
use superk::equivariant::{euler_class, Character};
use superk::koszul::{cone_class, generalized_koszul, GradedComplex, TwistData};

const NV: usize = 3;

fn weight() -> impl Strategy<Value = Monomial> {
    (-2i32..=2, -1i32..=1, -1i32..=1, -1i32..=1)
        .prop_map(|(q, a, b, c)| Monomial::new(q, &[a, b, c]))
        .prop_filter("nontrivial", |m| !m.is_one())
}

fn character() -> impl Strategy<Value = Character> {
    prop::collection::vec(weight(), 0..4).prop_map(|ws| Character::new(NV, ws))
}

fn complex() -> impl Strategy<Value = GradedComplex> {
    prop::collection::vec((-3i32..=3, prop::collection::vec(weight(), 1..3)), 0..4).prop_map(|terms| {
        let mut c = GradedComplex::zero(NV);
        for (d, ws) in terms {
            c.add_term(d, &Character::new(NV, ws).to_poly());
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_class_of_dual(v in character()) {
        let det = v.weights().iter().fold(Monomial::ONE, |acc, w| acc.mul(w));
        let sign = if v.rank() % 2 == 0 { 1 } else { -1 };
        let lhs = euler_class(&v.dual()).unwrap();
        let rhs = euler_class(&v).unwrap().mul_monomial(&det).scale(sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_class_is_multiplicative(a in character(), b in character()) {
        let lhs = euler_class(&a.union(&b)).unwrap();
        let rhs: RationalFunction = &euler_class(&a).unwrap() * &euler_class(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_coherence(c in complex(), a in -3i32..=3, b in -3i32..=3) {
        prop_assert_eq!(c.shift(a).shift(b), c.shift(a + b));
        let sign = if a % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(c.shift(a).class(), c.class().scale(&sign.into()));
    }

    #[test]
    fn cone_class_is_difference(src in complex(), tgt in complex()) {
        let cone = cone_class(&src, &tgt);
        prop_assert_eq!(cone.class(), tgt.class().try_sub(&src.class()).unwrap());
        prop_assert_eq!(src.direct_sum(&tgt).class(), src.class().try_add(&tgt.class()).unwrap());
    }

    #[test]
    fn tensor_class_is_product(a in complex(), b in complex(), m in weight(), n in -2i32..=2) {
        prop_assert_eq!(a.tensor(&b).class(), a.class().try_mul(&b.class()).unwrap());
        prop_assert_eq!(a.twist(&m).shift(n), a.shift(n).twist(&m));
    }

    #[test]
    fn generalized_koszul_ranks_are_binomial(rank in 0usize..=4, bits in 0u8..16) {
        let set: BTreeSet<i32> = (1..=rank as i32).filter(|j| bits & (1 << (j - 1)) != 0).collect();
        let td = TwistData::generic(rank, set.clone());
        let c = generalized_koszul(&set, &td.l, &td.v);
        for (d, p) in c.terms() {
            let j = (-d) as usize;
            let binom = (0..j).fold(1usize, |acc, i| acc * (rank - i) / (i + 1));
            let dim: i64 = p.terms().map(|(_, c)| i64::try_from(c).unwrap()).sum();
            prop_assert_eq!(dim as usize, binom);
        }
    }
}
