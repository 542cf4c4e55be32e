use proptest::prelude::*;
use qcapelli::scalar::{Poly, RatFunc, SymPoly};

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (prop::collection::vec(-3i64..=3, 1..4), prop::collection::vec(-3i64..=3, 1..3), -3i64..=3).prop_filter_map("nonzero denominator", |(n, d, s)| {
        let den = Poly::from_i64s(&d);
        if den.is_zero() {
            return None;
        }
        RatFunc::from_polys(Poly::from_i64s(&n), den).ok().map(|r| r.mul_q_pow(s))
    })
}

fn sympoly() -> impl Strategy<Value = SymPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -2i64..=2, -2i64..=2), 0..4).prop_map(|terms| {
        let mut p = SymPoly::zero(2);
        for ((a, b), c, s) in terms {
            p.add_term(vec![a, b], RatFunc::from_int(c).mul_q_pow(s));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_unique(a in ratfunc(), b in ratfunc()) {
        let back = &(&a + &b) - &b;
        prop_assert_eq!(back.to_string(), a.to_string());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(a.to_string().parse::<RatFunc>().unwrap(), a);
    }

    #[test]
    fn evaluation_is_multiplicative(p in sympoly(), r in sympoly(), e1 in -3i64..=3, e2 in -3i64..=3) {
        let e = [e1, e2];
        let lhs = p.mul(&r).eval_at_q_powers(&e).unwrap();
        let rhs = &p.eval_at_q_powers(&e).unwrap() * &r.eval_at_q_powers(&e).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = p.add(&r).eval_at_q_powers(&e).unwrap();
        prop_assert_eq!(sum, &p.eval_at_q_powers(&e).unwrap() + &r.eval_at_q_powers(&e).unwrap());
    }
}

#[test]
fn ratfunc_examples() {
    let r = |s: &str| s.parse::<RatFunc>().unwrap();
    assert_eq!(&r("q - 1") + &r("q + 1"), r("2*q"));
    assert_eq!(r("(q^2 - 1)/(q - 1)"), r("q + 1"));
    assert!((&r("(q^4 - 1)/(q^2 - 1)") * &r("1/(q^2 + 1)")).is_one());
    assert_eq!(r("(q^4 - 1)/(q^2 - 1)").to_string(), "q^2 + 1");
    assert_eq!(r("(q^4 - 1)/(q^3 - 1)").to_string(), "(q^3 + q^2 + q + 1)/(q^2 + q + 1)");
    assert!(RatFunc::one().checked_div(&RatFunc::zero()).is_err());
}

#[test]
fn q_power_evaluation_examples() {
    let x1 = SymPoly::var(2, 0);
    let x2 = SymPoly::var(2, 1);
    assert_eq!(x1.mul(&x2).eval_at_q_powers(&[1, 2]).unwrap(), RatFunc::q_pow(3));
    assert!(SymPoly::constant(2, RatFunc::one()).eval_at_q_powers(&[5, -7]).unwrap().is_one());
    let p = SymPoly::var(1, 0).sub(&SymPoly::constant(1, RatFunc::one())).scale(&"1/(q^4 - 1)".parse().unwrap());
    assert!(p.eval_at_q_powers(&[4]).unwrap().is_one());
    assert!(x1.eval_at_q_powers(&[1]).is_err());
}
