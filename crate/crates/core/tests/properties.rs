mod common;

use std::sync::Arc;

use proptest::prelude::*;
use qtwist_core::algebra::truncated_polynomial;
use qtwist_core::cohomology::qci_minimal_resolution;
use qtwist_core::{
    enveloping, qci_construct, qci_total_resolution, twisted_tensor_algebra, Degree, Field, QciSpec, Twist,
    TwistedProduct, UnitDescriptor,
};

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// A QCI over GF(7) with commutators drawn from the sixth roots of unity.
fn qci_strategy() -> impl Strategy<Value = QciSpec> {
    (prop::collection::vec(2usize..=4, 1..=3), prop::collection::vec(0i64..6, 3)).prop_map(|(a, e)| {
        let n = a.len();
        let mut pairs = Vec::new();
        let mut it = e.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j, UnitDescriptor::root(6, it.next().unwrap())));
            }
        }
        QciSpec::new(gf(7), a, pairs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn qci_agrees_with_word_rewriting(spec in qci_strategy()) {
        let alg = qci_construct(&spec).unwrap();
        prop_assert_eq!(alg.dim(), spec.exponents().iter().product::<usize>());
        if let Err(e) = common::qci_matches_rewriting(&spec, &alg) {
            return Err(TestCaseError::fail(e));
        }
        prop_assert!(alg.check_associativity().is_ok());
    }

    #[test]
    fn twist_is_a_bicharacter(
        exps in prop::collection::vec(0i64..6, 4),
        a in prop::collection::vec(-3i64..4, 2),
        a2 in prop::collection::vec(-3i64..4, 2),
        b in prop::collection::vec(-3i64..4, 2),
        b2 in prop::collection::vec(-3i64..4, 2),
    ) {
        let k = gf(7);
        let m = vec![
            vec![UnitDescriptor::root(6, exps[0]), UnitDescriptor::root(6, exps[1])],
            vec![UnitDescriptor::root(6, exps[2]), UnitDescriptor::root(6, exps[3])],
        ];
        let t = Twist::from_units(&k, m).unwrap();
        let (a, a2, b, b2) = (Degree(a), Degree(a2), Degree(b), Degree(b2));
        let ev = |x: &Degree, y: &Degree| t.eval(x, y).unwrap();
        prop_assert_eq!(ev(&(&a + &a2), &b), k.mul(&ev(&a, &b), &ev(&a2, &b)));
        prop_assert_eq!(ev(&a, &(&b + &b2)), k.mul(&ev(&a, &b), &ev(&a, &b2)));
        prop_assert!(k.is_one(&ev(&Degree::zero(2), &b)));
        prop_assert!(k.is_one(&ev(&a, &Degree::zero(2))));
    }

    #[test]
    fn twisted_products_and_envelopes_are_associative(x in 0i64..6, a in 2usize..=3, b in 2usize..=3) {
        let k = gf(7);
        let l = truncated_polynomial(&k, a).unwrap();
        let r = truncated_polynomial(&k, b).unwrap();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::root(6, x)]]).unwrap();
        let tp = twisted_tensor_algebra(&l, &r, &t).unwrap();
        prop_assert!(tp.check_associativity().is_ok());
        prop_assert!(enveloping(&tp).check_associativity().is_ok());
    }
}

#[test]
fn function_field_commutators_match_rewriting() {
    let k = Field::rational_functions(&["q", "r"]).unwrap();
    let spec = QciSpec::new(
        k,
        vec![2, 3, 2],
        vec![
            (0, 1, UnitDescriptor::var("q")),
            (0, 2, UnitDescriptor::monomial(&[("q", -1), ("r", 2)])),
            (1, 2, UnitDescriptor::minus_one()),
        ],
    )
    .unwrap();
    let alg = qci_construct(&spec).unwrap();
    common::qci_matches_rewriting(&spec, &alg).unwrap();
}

#[test]
fn resolutions_square_to_zero_and_are_exact() {
    let k = Field::rationals();
    for a in [vec![2, 2], vec![3, 2], vec![2, 2, 2]] {
        let spec = common::uniform(&k, &a, UnitDescriptor::minus_one());
        for res in [qci_minimal_resolution(&spec, 4).unwrap(), qci_total_resolution(&spec, 4).unwrap()] {
            assert!(res.check_d_squared(), "{a:?}");
            assert!(res.is_exact(), "{a:?}");
            assert!(res.is_minimal(), "{a:?}");
        }
    }
}

#[test]
fn small_oracle_equivalence() {
    let k = gf(5);
    for a in common::exponent_vectors(8) {
        let spec = common::uniform(&k, &a, UnitDescriptor::root(4, 1));
        let m = qci_minimal_resolution(&spec, 4).unwrap();
        let t = qci_total_resolution(&spec, 4).unwrap();
        assert_eq!(m.betti(), t.betti(), "{a:?}");
        for i in 0..=4 {
            let mut x = m.generator_degrees(i).to_vec();
            let mut y = t.generator_degrees(i).to_vec();
            x.sort();
            y.sort();
            assert_eq!(x, y, "{a:?} degree {i}");
        }
    }
}

#[test]
fn twisted_product_of_qci_factors_is_the_merged_qci() {
    let k = gf(5);
    let spec = QciSpec::uniform(k.clone(), vec![2, 3], UnitDescriptor::root(4, 1)).unwrap();
    let tp = TwistedProduct::new(
        Arc::new(qci_construct(&spec.truncate(1)).unwrap()),
        Arc::new(truncated_polynomial(&k, 3).unwrap()),
        spec.last_variable_twist().unwrap(),
    )
    .unwrap();
    let merged = qci_construct(&spec).unwrap();
    // match bases by degree and compare structure constants
    let idx = |alg: &qtwist_core::GradedAlgebra, d: &Degree| (0..alg.dim()).find(|&u| alg.degree(u) == d).unwrap();
    for u in 0..merged.dim() {
        for v in 0..merged.dim() {
            let (du, dv) = (merged.degree(u), merged.degree(v));
            let (x, y) = (idx(&tp.algebra, du), idx(&tp.algebra, dv));
            let want: Vec<_> = merged.basis_product(u, v).iter().map(|(w, c)| (merged.degree(*w).clone(), c.clone())).collect();
            let got: Vec<_> = tp.algebra.basis_product(x, y).iter().map(|(w, c)| (tp.algebra.degree(*w).clone(), c.clone())).collect();
            assert_eq!(got, want);
        }
    }
}
