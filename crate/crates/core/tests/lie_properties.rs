use fms_core::algebra::{build_table, decompose, Decomposition, TableKind};
use fms_core::catalog::{generator, GeneratorId};
use fms_core::verify::{closure_violation, generator_triples, jacobi_sum, CROSS_FAMILY_PAIRS, TRIPLETS};
use fms_core::RingElem;
use proptest::prelude::*;

use GeneratorId::*;

#[test]
fn jacobi_identity_on_all_triples() {
    let triples = generator_triples();
    assert_eq!(triples.len(), 455);
    for [x, y, z] in triples {
        assert!(jacobi_sum(generator(x), generator(y), generator(z)).is_zero(), "({x}, {y}, {z})");
    }
}

#[test]
fn commutators_close_on_the_generators() {
    let ids = &GeneratorId::BASIS[1..];
    for &a in ids {
        for &b in ids {
            assert_eq!(closure_violation(a, b).unwrap(), None);
        }
    }
}

#[test]
fn triplets_commute() {
    for t in TRIPLETS {
        for a in t {
            for b in t {
                assert!(generator(a).commutator(generator(b)).is_zero(), "[{a},{b}]");
            }
        }
    }
}

#[test]
fn different_isometric_families_commute() {
    for (a, b) in CROSS_FAMILY_PAIRS {
        assert!(generator(a).commutator(generator(b)).is_zero(), "[{a},{b}]");
    }
    // within a family they do not
    assert!(!generator(B0).commutator(generator(B2)).is_zero());
    assert!(!generator(B0p).commutator(generator(D1)).is_zero());
}

#[test]
fn family_commutators() {
    let c = |a: GeneratorId, b: GeneratorId| decompose(&generator(a).commutator(generator(b))).unwrap();
    assert_eq!(c(B0, B2), Decomposition::single(D2, RingElem::from_int(2)));
    assert_eq!(c(B0, D2), Decomposition::single(B2, RingElem::from_int(2)));
    assert_eq!(c(B0p, B1), Decomposition::single(D1, RingElem::from_int(2)));
    assert_eq!(c(B0p, D1), Decomposition::single(B1, RingElem::from_int(2)));
    // opposite sign to the published relations [B2,D2] = 2q^4 B0 and [B1,D1] = 2q^2 B0'
    assert_eq!(c(B2, D2), Decomposition::single(B0, RingElem::term(-2, 1, 4, 0)));
    assert_eq!(c(B1, D1), Decomposition::single(B0p, RingElem::term(-2, 1, 2, 0)));
}

#[test]
fn table_examples() {
    let t = build_table(TableKind::Product, &GeneratorId::METAMORPHIC, &GeneratorId::METAMORPHIC).unwrap();
    assert_eq!(t.cells[0][0], Decomposition::single(One, RingElem::term(-1, 1, 2, 0)));
    let t = build_table(TableKind::HalfCommutator, &[F1], &[F2]).unwrap();
    assert!(t.cells[0][0].is_zero());
    assert_eq!(decompose(&(generator(B0) * generator(F2))).unwrap(), Decomposition::single(H2, RingElem::one()));
}

#[test]
fn reverse_product_is_the_transposed_product_table() {
    let ids = &GeneratorId::BASIS[1..];
    let xy = build_table(TableKind::Product, ids, ids).unwrap();
    let yx = build_table(TableKind::ReverseProduct, ids, ids).unwrap();
    for i in 0..ids.len() {
        for j in 0..ids.len() {
            assert_eq!(xy.cells[i][j], yx.cells[j][i]);
        }
    }
}

fn coefficient() -> impl Strategy<Value = RingElem> {
    (1i64..=9, any::<bool>(), 1i64..=9, -6i64..=6, -2i64..=2)
        .prop_map(|(n, neg, d, q, pi)| RingElem::term(if neg { -n } else { n }, d, q, pi))
}

fn decomposition() -> impl Strategy<Value = Decomposition> {
    prop::collection::vec(prop::option::of(coefficient()), 16).prop_map(|cs| {
        GeneratorId::BASIS.into_iter().zip(cs).filter_map(|(id, c)| c.map(|c| (id, c))).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn decompose_inverts_reconstruct(d in decomposition()) {
        prop_assert_eq!(decompose(&d.reconstruct()).unwrap(), d);
    }

    #[test]
    fn decomposition_json_roundtrip(d in decomposition()) {
        let s = serde_json::to_string(&d).unwrap();
        let back: Decomposition = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, d);
    }
}
