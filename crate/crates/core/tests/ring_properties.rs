use fms_core::{FieldElem, Mat4, RingElem};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = RingElem> {
    (-12i64..=12, 1i64..=9, -4i64..=4, -2i64..=2).prop_map(|(n, d, q, pi)| RingElem::term(n, d, q, pi))
}

fn elem() -> impl Strategy<Value = RingElem> {
    prop::collection::vec(term(), 0..4).prop_map(|ts| ts.into_iter().fold(RingElem::zero(), |acc, t| acc + t))
}

fn nonzero_elem() -> impl Strategy<Value = RingElem> {
    elem().prop_filter("nonzero", |e| !e.is_zero())
}

fn mat() -> impl Strategy<Value = Mat4> {
    prop::collection::vec(elem(), 16).prop_map(|v| Mat4::from_fn(|r, c| v[4 * r + c].clone()))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn addition_is_a_group(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &RingElem::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn multiplication_is_commutative_monoid(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &RingElem::one(), a.clone());
        prop_assert!((&a * &RingElem::zero()).is_zero());
    }

    #[test]
    fn distributive(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in elem(), b in elem(), q in 0.3f64..3.0) {
        prop_assert!(close((&a + &b).eval(q), a.eval(q) + b.eval(q)));
        prop_assert!(close((&a * &b).eval(q), a.eval(q) * b.eval(q)));
    }

    #[test]
    fn exact_division_undoes_multiplication(a in elem(), b in nonzero_elem()) {
        let p = &a * &b;
        prop_assert_eq!(p.div_exact(&b), Some(a));
    }

    #[test]
    fn field_division_roundtrips(a in elem(), b in nonzero_elem(), c in nonzero_elem()) {
        let x = FieldElem::new(a.clone(), c.clone()).unwrap();
        let y = FieldElem::new(b.clone(), RingElem::one()).unwrap();
        let back = &(&x / &y).unwrap() * &y;
        prop_assert_eq!(back, x);
    }

    #[test]
    fn json_roundtrip(a in elem()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: RingElem = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn counter_transpose_reverses_products(x in mat(), y in mat()) {
        prop_assert_eq!((&x * &y).counter_transpose(), &y.counter_transpose() * &x.counter_transpose());
        prop_assert_eq!(x.counter_transpose().counter_transpose(), x.clone());
        prop_assert_eq!(x.counter_transpose(), &(&Mat4::metric() * &x.transpose()) * &Mat4::metric());
    }

    #[test]
    fn matrix_evaluation_is_a_homomorphism(x in mat(), y in mat(), q in 0.5f64..2.0) {
        let exact = (&x * &y).eval(q).unwrap();
        let numeric = &x.eval(q).unwrap() * &y.eval(q).unwrap();
        let scale = 1.0 + exact.max_norm().max(numeric.max_norm());
        prop_assert!(exact.max_abs_diff(&numeric) <= 1e-9 * scale);
    }

    #[test]
    fn matrix_json_roundtrip(x in mat()) {
        let s = serde_json::to_string(&x).unwrap();
        let back: Mat4 = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, x);
    }
}
