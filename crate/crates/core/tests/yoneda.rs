mod common;

use std::sync::Arc;

use qtwist_core::algebra::truncated_polynomial;
use qtwist_core::cohomology::qci_minimal_resolution;
use qtwist_core::{graded_hom, minimal_resolution, qci_construct, ExtEngine, Field, GradedModule, UnitDescriptor};

fn qci_engine(k: &Field, a: &[usize], q: UnitDescriptor, trunc: usize) -> ExtEngine {
    let spec = common::uniform(k, a, q);
    let res = qci_minimal_resolution(&spec, trunc + 1).unwrap();
    let coeff = res.target().clone();
    ExtEngine::new(res, coeff).unwrap()
}

fn engines() -> Vec<(&'static str, ExtEngine)> {
    let qk = Field::rational_functions(&["q"]).unwrap();
    let k = Field::rationals();
    vec![
        ("(2,2) generic", qci_engine(&qk, &[2, 2], UnitDescriptor::var("q"), 4)),
        ("(2,3) at -1", qci_engine(&k, &[2, 3], UnitDescriptor::minus_one(), 4)),
        ("x^3", qci_engine(&k, &[3], UnitDescriptor::one(), 5)),
    ]
}

#[test]
fn yoneda_product_is_associative() {
    for (name, e) in engines() {
        let trunc = e.max_degree();
        let classes = common::all_classes(&e, trunc);
        let mut checked = 0;
        for x in classes.iter().filter(|c| c.degree >= 1) {
            for y in classes.iter().filter(|c| c.degree >= 1) {
                for z in classes.iter().filter(|c| c.degree >= 1) {
                    if x.degree + y.degree + z.degree > trunc {
                        continue;
                    }
                    let l = e.yoneda_product(&e.yoneda_product(x, y).unwrap(), z).unwrap();
                    let r = e.yoneda_product(x, &e.yoneda_product(y, z).unwrap()).unwrap();
                    assert!(e.equal_classes(&l, &r).unwrap(), "{name}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "{name}");
    }
}

/// Trivial-coefficient engines over resolutions padded by a contractible summand, so
/// coboundaries are nonzero and lifts pass through a non-minimal complex.
fn padded_engines() -> Vec<(String, ExtEngine)> {
    let mut out = Vec::new();
    for (name, e) in engines() {
        let table = e.table(e.max_degree()).unwrap();
        for j in 1..=2 {
            let Some((_, s)) = table.dims.keys().find(|(i, _)| *i == j) else { continue };
            let padded = common::with_contractible(e.resolution(), j, s);
            assert!(padded.is_exact());
            assert!(!padded.is_minimal());
            let coeff = padded.target().clone();
            out.push((format!("{name} padded at {j}"), ExtEngine::new(padded, coeff).unwrap()));
        }
    }
    out
}

#[test]
fn products_do_not_depend_on_representatives() {
    for (name, e) in padded_engines() {
        let trunc = e.max_degree();
        let classes = common::all_classes(&e, trunc);
        let mut perturbed = 0;
        for x in &classes {
            let Some(x2) = common::perturb(&e, x) else { continue };
            assert!(e.is_cocycle(&x2));
            assert!(e.equal_classes(x, &x2).unwrap());
            for y in classes.iter().filter(|y| x.degree + y.degree <= trunc) {
                let a = e.yoneda_product(x, y).unwrap();
                assert!(e.equal_classes(&a, &e.yoneda_product(&x2, y).unwrap()).unwrap(), "{name}");
                assert!(e.equal_classes(&e.yoneda_product(y, x).unwrap(), &e.yoneda_product(y, &x2).unwrap()).unwrap(), "{name}");
                perturbed += 1;
            }
        }
        assert!(perturbed > 0, "{name}");
    }
}

#[test]
fn padding_leaves_ext_unchanged() {
    for (name, e) in engines() {
        let t = e.max_degree();
        let base = e.table(t).unwrap().dims;
        for (pname, p) in padded_engines().into_iter().filter(|(n, _)| n.starts_with(name)) {
            assert_eq!(p.table(t).unwrap().dims, base, "{pname}");
        }
    }
}

#[test]
fn identity_is_a_two_sided_unit() {
    for (name, e) in engines() {
        let one = e.identity_class().unwrap();
        for x in common::all_classes(&e, e.max_degree()) {
            assert!(e.equal_classes(&e.yoneda_product(&one, &x).unwrap(), &x).unwrap(), "{name}");
            assert!(e.equal_classes(&e.yoneda_product(&x, &one).unwrap(), &x).unwrap(), "{name}");
        }
    }
}

/// Ext^0(M, N) computed from a resolution agrees with graded Hom solved directly.
#[test]
fn ext_zero_is_graded_hom() {
    let k = Field::rationals();
    let g = Arc::new(truncated_polynomial(&k, 3).unwrap());
    let spec = common::uniform(&k, &[2, 2], UnitDescriptor::minus_one());
    let q = Arc::new(qci_construct(&spec).unwrap());
    for alg in [g, q] {
        let triv = GradedModule::trivial(alg.clone()).unwrap();
        let reg = GradedModule::regular(alg.clone());
        let sum = GradedModule::direct_sum(&[triv.clone(), reg.clone()]).unwrap();
        for m in [&triv, &reg, &sum] {
            for n in [&triv, &reg, &sum] {
                let res = minimal_resolution(alg.clone(), m, 1).unwrap();
                let table = ExtEngine::new(res, n.clone()).unwrap().table(0).unwrap();
                let ext0: std::collections::BTreeMap<_, _> =
                    table.dims.iter().map(|((_, a), d)| (a.clone(), *d)).collect();
                assert_eq!(ext0, graded_hom(m, n).unwrap().dims());
            }
        }
    }
}
