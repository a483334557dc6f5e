//! Total complexes of twisted tensor products of resolutions.
//!
//! Each summand P_i ⊗ᵗ Q_j is free on the elements e_g ⊗ e_h. Rather than
//! writing the shift scalars down by hand, the comparison map from the free
//! module on these generators is built as a concrete linear map and inverted,
//! so the same code serves one-sided modules and bimodules.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{GradedAlgebra, TwistedProduct};
use crate::error::{Error, Result};
use crate::linalg::{axpy, ColumnSolver, SparseVec};
use crate::module::{bimodule_tensor, module_tensor, outer, GradedModule};
use crate::resolution::{FreeModule, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    Module,
    Bimodule,
}

/// Whether the right differential carries the sign (−1)^i. Only tests turn it off.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    Koszul,
    Unsigned,
}

struct Summand {
    free: FreeModule,
    solver: ColumnSolver,
    q_dim: usize,
}

/// Tot(P ⊗ᵗ Q) with d(p⊗q) = d_P p ⊗ q + (−1)^i p ⊗ d_Q q, augmented by ε_P ⊗ ε_Q.
pub fn twisted_total_resolution(
    tp: &TwistedProduct,
    p: &Resolution,
    q: &Resolution,
    kind: TensorKind,
    trunc: usize,
) -> Result<Resolution> {
    total_with_sign(tp, p, q, kind, trunc, SignRule::Koszul)
}

pub fn total_with_sign(
    tp: &TwistedProduct,
    p: &Resolution,
    q: &Resolution,
    kind: TensorKind,
    trunc: usize,
    sign: SignRule,
) -> Result<Resolution> {
    let algebra: Arc<GradedAlgebra> = match kind {
        TensorKind::Module => tp.algebra.clone(),
        TensorKind::Bimodule => tp.envelope(),
    };
    let k = algebra.field().clone();
    let tensor = |m: &GradedModule, n: &GradedModule| match kind {
        TensorKind::Module => module_tensor(tp, m, n),
        TensorKind::Bimodule => bimodule_tensor(tp, m, n),
    };
    let dc = algebra.dim();
    let mut summands: BTreeMap<(usize, usize), Summand> = BTreeMap::new();
    for i in 0..=trunc.min(p.length()) {
        for j in 0..=(trunc - i).min(q.length()) {
            let (pi, qj) = (p.term(i), q.term(j));
            let t = tensor(&pi.module(), &qj.module())?;
            let mut shifts = Vec::new();
            let mut labels = Vec::new();
            let mut cols = Vec::new();
            for g in 0..pi.rank() {
                for h in 0..qj.rank() {
                    shifts.push(pi.shifts()[g].concat(&qj.shifts()[h]));
                    labels.push(format!("{}⊗{}", pi.labels()[g], qj.labels()[h]));
                    let gen = outer(&k, &k.one(), &pi.generator(g), &qj.generator(h), qj.dim());
                    for c in 0..dc {
                        cols.push(t.act_on(c, &gen));
                    }
                }
            }
            let solver = ColumnSolver::from_columns(&k, t.dim(), cols);
            if solver.rank() != t.dim() || !solver.kernel().is_empty() {
                return Err(Error::LiftFailed(format!(
                    "P_{i} ⊗ Q_{j} is not free on the tensor generators"
                )));
            }
            summands.insert(
                (i, j),
                Summand {
                    free: FreeModule::new(algebra.clone(), shifts, labels),
                    solver,
                    q_dim: qj.dim(),
                },
            );
        }
    }
    let target = tensor(p.target(), q.target())?;
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    // offsets[m][(i,j)] = first generator index of that block in Tot_m
    let mut offsets: Vec<BTreeMap<(usize, usize), usize>> = Vec::new();
    for m in 0..=trunc {
        let mut shifts = Vec::new();
        let mut labels = Vec::new();
        let mut off = BTreeMap::new();
        for (&(i, j), s) in summands.iter().filter(|((i, j), _)| i + j == m) {
            off.insert((i, j), shifts.len());
            shifts.extend(s.free.shifts().iter().cloned());
            labels.extend(s.free.labels().iter().cloned());
        }
        if shifts.is_empty() {
            break;
        }
        terms.push(FreeModule::new(algebra.clone(), shifts, labels));
        offsets.push(off);
    }
    for m in 0..terms.len() {
        let mut images = vec![Vec::new(); terms[m].rank()];
        for (&(i, j), &start) in &offsets[m] {
            let (pi, qj) = (p.term(i), q.term(j));
            for g in 0..pi.rank() {
                for h in 0..qj.rank() {
                    let idx = start + g * qj.rank() + h;
                    images[idx] = if m == 0 {
                        let (ep, eq) = (&p.map_images(0)[g], &q.map_images(0)[h]);
                        outer(&k, &k.one(), ep, eq, q.target().dim())
                    } else {
                        let mut img: SparseVec = Vec::new();
                        if i > 0 {
                            let below = &summands[&(i - 1, j)];
                            let v = outer(&k, &k.one(), &p.map_images(i)[g], &qj.generator(h), below.q_dim);
                            let c = embed(below, &v, offsets[m - 1][&(i - 1, j)], dc)?;
                            img = axpy(&k, &img, &k.one(), &c);
                        }
                        if j > 0 {
                            let below = &summands[&(i, j - 1)];
                            let v = outer(&k, &k.one(), &pi.generator(g), &q.map_images(j)[h], below.q_dim);
                            let c = embed(below, &v, offsets[m - 1][&(i, j - 1)], dc)?;
                            let s = if sign == SignRule::Koszul && i % 2 == 1 { k.int(-1) } else { k.one() };
                            img = axpy(&k, &img, &s, &c);
                        }
                        img
                    };
                }
            }
        }
        maps.push(images);
    }
    Resolution::new(target, terms, maps)
}

/// Express v ∈ P_i ⊗ᵗ Q_j in free coordinates and move it to its block in Tot.
fn embed(s: &Summand, v: &SparseVec, start: usize, dc: usize) -> Result<SparseVec> {
    let x = s
        .solver
        .solve(v)
        .ok_or_else(|| Error::LiftFailed("element outside the tensor summand".into()))?;
    Ok(x.into_iter().map(|(b, c)| (start * dc + b, c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::algebra::{qci_construct, truncated_polynomial, QciSpec};
    use crate::resolution::{minimal_resolution, periodic_bimodule_resolution_over, periodic_module_resolution_over};
    use crate::{Twist, UnitDescriptor};

    fn product(k: &Field, a: usize, b: usize, q: UnitDescriptor) -> TwistedProduct {
        let t = Twist::from_units(k, vec![vec![q]]).unwrap();
        TwistedProduct::new(
            Arc::new(truncated_polynomial(k, a).unwrap()),
            Arc::new(truncated_polynomial(k, b).unwrap()),
            t,
        )
        .unwrap()
    }

    #[test]
    fn untwisted_betti_convolution() {
        let k = Field::rationals();
        let tp = product(&k, 2, 2, UnitDescriptor::one());
        let p = periodic_module_resolution_over(tp.left.clone(), 5).unwrap();
        let q = periodic_module_resolution_over(tp.right.clone(), 5).unwrap();
        let r = twisted_total_resolution(&tp, &p, &q, TensorKind::Module, 5).unwrap();
        assert_eq!(r.betti(), vec![1, 2, 3, 4, 5, 6]);
        assert!(r.is_exact());
    }

    #[test]
    fn generic_q_total_is_minimal() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let tp = product(&k, 2, 2, UnitDescriptor::var("q"));
        let p = periodic_module_resolution_over(tp.left.clone(), 4).unwrap();
        let q = periodic_module_resolution_over(tp.right.clone(), 4).unwrap();
        let r = twisted_total_resolution(&tp, &p, &q, TensorKind::Module, 4).unwrap();
        assert!(r.is_exact() && r.is_minimal());
        let spec = QciSpec::uniform(k, vec![2, 2], UnitDescriptor::var("q")).unwrap();
        let alg = Arc::new(qci_construct(&spec).unwrap());
        let kk = GradedModule::trivial(alg.clone()).unwrap();
        assert_eq!(minimal_resolution(alg, &kk, 4).unwrap().betti(), r.betti());
    }

    #[test]
    fn dropping_the_sign_breaks_d_squared() {
        let k = Field::rationals();
        let tp = product(&k, 2, 3, UnitDescriptor::minus_one());
        let p = periodic_module_resolution_over(tp.left.clone(), 3).unwrap();
        let q = periodic_module_resolution_over(tp.right.clone(), 3).unwrap();
        let r = total_with_sign(&tp, &p, &q, TensorKind::Module, 3, SignRule::Unsigned).unwrap();
        assert!(!r.check_d_squared());
    }

    #[test]
    fn bimodule_total_is_exact() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let tp = product(&k, 2, 3, UnitDescriptor::var("q"));
        let p = periodic_bimodule_resolution_over(&tp.left, tp.left_envelope(), 3).unwrap();
        let q = periodic_bimodule_resolution_over(&tp.right, tp.right_envelope(), 3).unwrap();
        let r = twisted_total_resolution(&tp, &p, &q, TensorKind::Bimodule, 3).unwrap();
        assert_eq!(r.betti(), vec![1, 2, 3, 4]);
        assert!(r.is_exact());
    }
}
