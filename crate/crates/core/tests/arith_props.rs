use num_bigint::BigInt;
use proptest::prelude::*;

use superk::arith::{check_identity, LaurentScalar, Monomial, PointSampler, Poly, RationalFunction, DEFAULT_POINTS};

const NV: usize = 2;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-2i32..=2, -2i32..=2, -2i32..=2, -3i64..=3), 0..4).prop_map(|ts| {
        Poly::from_terms(NV, ts.into_iter().map(|(q, a, b, c)| (Monomial::new(q, &[a, b]), BigInt::from(c))))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunction> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

fn laurent() -> impl Strategy<Value = LaurentScalar> {
    prop::collection::vec((-3i64..=3, -4i32..=4), 0..5).prop_map(LaurentScalar::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        let one = RationalFunction::one(NV);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.try_inv().unwrap()).is_one());
        }
    }

    #[test]
    fn eval_is_a_homomorphism(a in ratfunc(), b in ratfunc(), seed in any::<u64>()) {
        let mut s = PointSampler::new(NV, seed);
        let p = s.next_point();
        let (Ok(ea), Ok(eb)) = (a.eval_at(&p.q, &p.x), b.eval_at(&p.q, &p.x)) else { return Ok(()) };
        prop_assert_eq!((&a + &b).eval_at(&p.q, &p.x).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval_at(&p.q, &p.x).unwrap(), &ea * &eb);
    }

    #[test]
    fn normalization_is_idempotent(n in poly(), d in nonzero_poly()) {
        let a = RationalFunction::new(n.clone(), d.clone()).unwrap();
        let again = RationalFunction::new(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(again.numer(), a.numer());
        prop_assert_eq!(again.denom(), a.denom());
        prop_assert_eq!(n.try_mul(a.denom()).unwrap(), d.try_mul(a.numer()).unwrap());
    }

    #[test]
    fn parse_print_round_trip(a in ratfunc()) {
        prop_assert_eq!(RationalFunction::parse(&a.to_string(), NV).unwrap(), a);
    }

    #[test]
    fn laurent_round_trip_and_ring(a in laurent(), b in laurent()) {
        prop_assert_eq!(LaurentScalar::parse(&a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!(a.terms().all(|(_, c)| *c != BigInt::from(0)));
        let via = LaurentScalar::from_rational(&(&a.to_rational(NV) * &b.to_rational(NV))).unwrap();
        prop_assert_eq!(via, &a * &b);
    }

    #[test]
    fn random_points_agree_with_exact_equality(a in ratfunc(), b in ratfunc(), seed in any::<u64>()) {
        let rearranged = &(&a * &b) - &(&b * &a) + a.clone();
        prop_assert!(check_identity(&a, &rearranged, seed, DEFAULT_POINTS).unwrap().holds());
        let sz = check_identity(&a, &b, seed, DEFAULT_POINTS).unwrap();
        prop_assert_eq!(sz.holds(), a == b);
    }
}
