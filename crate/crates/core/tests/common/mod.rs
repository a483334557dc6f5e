//! Independent oracles shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::sync::Arc;

use qtwist_core::cohomology::ExtEngine;
use qtwist_core::linalg::axpy;
use qtwist_core::linalg::SparseVec;
use qtwist_core::{CohomologyClass, Degree, Field, FieldElement, FreeModule, GradedAlgebra, QciSpec, Resolution, UnitDescriptor};

/// Multiply normal monomials by rewriting words: swap adjacent x_j x_i (j > i) into
/// q_ij x_i x_j until sorted, then kill anything with x_i^{a_i}.
pub fn rewrite_product(k: &Field, spec: &QciSpec, d: &[usize], e: &[usize]) -> Option<(Vec<usize>, FieldElement)> {
    let mut word: Vec<usize> = Vec::new();
    for (i, &x) in d.iter().enumerate() {
        word.extend(std::iter::repeat(i).take(x));
    }
    for (i, &x) in e.iter().enumerate() {
        word.extend(std::iter::repeat(i).take(x));
    }
    let mut c = k.one();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for p in 0..word.len().saturating_sub(1) {
            let (j, i) = (word[p], word[p + 1]);
            if j > i {
                c = k.mul(&c, &k.unit_eval(spec.q(i, j)).unwrap());
                word.swap(p, p + 1);
                swapped = true;
            }
        }
    }
    let mut exps = vec![0; spec.n()];
    for x in word {
        exps[x] += 1;
    }
    if exps.iter().zip(spec.exponents()).any(|(x, a)| x >= a) {
        return None;
    }
    Some((exps, c))
}

/// Compare every structure constant of the constructed QCI with word rewriting.
pub fn qci_matches_rewriting(spec: &QciSpec, alg: &GradedAlgebra) -> Result<(), String> {
    let k = spec.field();
    let exps = |u: usize| -> Vec<usize> { alg.degree(u).0.iter().map(|&x| x as usize).collect() };
    for u in 0..alg.dim() {
        for v in 0..alg.dim() {
            let got = alg.basis_product(u, v).clone();
            let want = match rewrite_product(k, spec, &exps(u), &exps(v)) {
                None => Vec::new(),
                Some((w, c)) => {
                    let target = (0..alg.dim())
                        .find(|&x| exps(x) == w)
                        .ok_or_else(|| format!("no basis element of degree {w:?}"))?;
                    vec![(target, c)]
                }
            };
            if got != want {
                return Err(format!("{} * {}: got {got:?}, rewriting gives {want:?}", alg.label(u), alg.label(v)));
            }
        }
    }
    Ok(())
}

/// Multiplicative order by repeated multiplication, up to `bound`; `None` if not reached.
pub fn order_by_powering(k: &Field, x: &FieldElement, bound: u64) -> Option<u64> {
    let mut acc = x.clone();
    for n in 1..=bound {
        if k.is_one(&acc) {
            return Some(n);
        }
        acc = k.mul(&acc, x);
    }
    None
}

/// All basis classes of Ext^i for i ≤ trunc.
pub fn all_classes(engine: &ExtEngine, trunc: usize) -> Vec<CohomologyClass> {
    let table = engine.table(trunc).unwrap();
    let mut out = Vec::new();
    for (i, a) in table.dims.keys() {
        out.extend(engine.class_basis(*i, a).unwrap());
    }
    out
}

/// ξ + δf for the first elementary cochain f of degree i − 1 with δf ≠ 0.
pub fn perturb(engine: &ExtEngine, xi: &CohomologyClass) -> Option<CohomologyClass> {
    if xi.degree == 0 {
        return None;
    }
    let res = engine.resolution();
    let coeff = engine.coefficients();
    let k = res.algebra().field();
    let shifts = res.term(xi.degree - 1).shifts();
    for (g, s) in shifts.iter().enumerate() {
        let want: Degree = s - &xi.internal;
        for n in (0..coeff.dim()).filter(|&n| *coeff.degree(n) == want) {
            let mut f = vec![Vec::new(); shifts.len()];
            f[g] = vec![(n, k.one())];
            let df = engine.coboundary(xi.degree - 1, &f)?;
            if df.iter().all(Vec::is_empty) {
                continue;
            }
            let cocycle = xi.cocycle.iter().zip(&df).map(|(a, b)| axpy(k, a, &k.one(), b)).collect();
            return Some(CohomologyClass {
                degree: xi.degree,
                internal: xi.internal.clone(),
                cocycle,
            });
        }
    }
    None
}

/// Exponent vectors with n ≤ 3 variables, every a_i ≥ 2 and ∏ a_i ≤ `bound`.
pub fn exponent_vectors(bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (2..=bound).map(|a| vec![a]).collect();
    while let Some(v) = stack.pop() {
        let p: usize = v.iter().product();
        if v.len() < 3 {
            for a in 2..=bound / p {
                let mut w = v.clone();
                w.push(a);
                stack.push(w);
            }
        }
        out.push(v);
    }
    out.sort();
    out
}

pub fn uniform(k: &Field, a: &[usize], q: UnitDescriptor) -> QciSpec {
    QciSpec::uniform(k.clone(), a.to_vec(), q).unwrap()
}

pub fn arc(a: GradedAlgebra) -> Arc<GradedAlgebra> {
    Arc::new(a)
}

/// P ⊕ (Λ⟨s⟩ → Λ⟨s⟩) placed in homological degrees j and j − 1: still a resolution, no longer minimal.
pub fn with_contractible(res: &Resolution, j: usize, s: &Degree) -> Resolution {
    assert!(j >= 1 && j <= res.length());
    let mut terms = res.terms().to_vec();
    let mut maps: Vec<Vec<SparseVec>> = (0..terms.len()).map(|i| res.map_images(i).to_vec()).collect();
    for i in [j - 1, j] {
        let p = &terms[i];
        let mut shifts = p.shifts().to_vec();
        let mut labels = p.labels().to_vec();
        shifts.push(s.clone());
        labels.push(format!("c{i}"));
        terms[i] = FreeModule::new(p.algebra().clone(), shifts, labels);
    }
    maps[j - 1].push(Vec::new());
    let e = terms[j - 1].rank() - 1;
    maps[j].push(terms[j - 1].generator(e));
    Resolution::new(res.target().clone(), terms, maps).unwrap()
}
