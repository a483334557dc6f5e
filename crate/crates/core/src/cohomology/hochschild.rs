//! Hochschild cohomology HH^*(Λ) = Ext_{Λ^e}(Λ, Λ) and its comparison with twisted tensor products.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{enveloping, GradedAlgebra, TwistedProduct};
use crate::cohomology::ext::{CohomologyClass, ExtEngine, ExtTable};
use crate::error::{Error, Result};
use crate::grading::{Degree, Side};
use crate::linalg::SparseVec;
use crate::module::GradedModule;
use crate::resolution::{minimal_resolution, periodic_bimodule_resolution_over, Resolution};
use crate::total::{twisted_total_resolution, TensorKind};

/// Default bound on dim Λ; the enveloping algebra has dimension (dim Λ)².
pub const HH_DIM_GUARD: usize = 32;

fn guard(alg: &GradedAlgebra, allow_large: bool) -> Result<()> {
    if !allow_large && alg.dim() > HH_DIM_GUARD {
        return Err(Error::GuardExceeded {
            what: "algebra dimension",
            value: alg.dim(),
            limit: HH_DIM_GUARD,
        });
    }
    Ok(())
}

/// Bimodule resolution of Λ: periodic for k[x]/(x^a), minimal over Λ^e otherwise.
pub fn bimodule_resolution(alg: &Arc<GradedAlgebra>, trunc: usize, allow_large: bool) -> Result<Resolution> {
    guard(alg, allow_large)?;
    let env = Arc::new(enveloping(alg));
    if alg.truncated_polynomial_exponent().is_some() {
        return periodic_bimodule_resolution_over(alg, env, trunc);
    }
    let lam = GradedModule::algebra_as_bimodule(alg, env.clone())?;
    minimal_resolution(env, &lam, trunc)
}

/// Ext engine for HH^*(Λ), resolved one step past `trunc` so every cell up to it is exact.
pub fn hochschild_engine(alg: &Arc<GradedAlgebra>, trunc: usize, allow_large: bool) -> Result<ExtEngine> {
    let res = bimodule_resolution(alg, trunc + 1, allow_large)?;
    let lam = res.target().clone();
    ExtEngine::new(res, lam)
}

pub fn hochschild_table(alg: &Arc<GradedAlgebra>, trunc: usize, allow_large: bool) -> Result<ExtTable> {
    hochschild_engine(alg, trunc, allow_large)?.table(trunc)
}

/// HH^*(Λ ⊗ᵗ Γ) from the twisted total complex of the factors' bimodule resolutions.
pub fn hochschild_engine_twisted(tp: &TwistedProduct, trunc: usize, allow_large: bool) -> Result<ExtEngine> {
    guard(&tp.algebra, allow_large)?;
    let p = bimodule_resolution(&tp.left, trunc + 1, allow_large)?;
    let q = bimodule_resolution(&tp.right, trunc + 1, allow_large)?;
    let p = p.with_algebra(tp.left_envelope())?;
    let q = q.with_algebra(tp.right_envelope())?;
    let res = twisted_total_resolution(tp, &p, &q, TensorKind::Bimodule, trunc + 1)?;
    let lam = res.target().clone();
    ExtEngine::new(res, lam)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhKunnethRow {
    pub degree: usize,
    pub left_internal: Vec<i64>,
    pub right_internal: Vec<i64>,
    /// Σ_{i+j=m} dim HH^{i,a}(Λ)·dim HH^{j,b}(Γ)
    pub product: usize,
    /// dim HH^{m,(a,b)}(Λ⊗ᵗΓ) from a minimal resolution over (Λ⊗ᵗΓ)^e
    pub minimal: usize,
    /// the same from the twisted total complex of the factor resolutions
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HhKunnethReport {
    pub left_kernel: Vec<Vec<String>>,
    pub right_kernel: Vec<Vec<String>>,
    pub rows: Vec<HhKunnethRow>,
}

impl HhKunnethReport {
    pub fn mismatches(&self) -> Vec<&HhKunnethRow> {
        self.rows
            .iter()
            .filter(|r| r.product != r.minimal || r.minimal != r.total)
            .collect()
    }

    pub fn passed(&self) -> bool {
        !self.rows.is_empty() && self.mismatches().is_empty()
    }
}

/// Compare HH of the twisted product with the tensor of the factors' HH on A′ ⊕ B′.
pub fn hochschild_kunneth_check(tp: &TwistedProduct, trunc: usize, allow_large: bool) -> Result<HhKunnethReport> {
    let a_prime = tp.twist.kernel_sublattice(Side::Left)?;
    let b_prime = tp.twist.kernel_sublattice(Side::Right)?;
    let left = hochschild_table(&tp.left, trunc, allow_large)?;
    let right = hochschild_table(&tp.right, trunc, allow_large)?;
    let minimal = hochschild_table(&tp.algebra, trunc, allow_large)?;
    let total = hochschild_engine_twisted(tp, trunc, allow_large)?.table(trunc)?;
    let m = tp.left.grading_rank();
    let in_kernels = |a: &Degree, b: &Degree| a_prime.contains(&a.0) && b_prime.contains(&b.0);
    let mut keys: BTreeSet<(usize, Degree, Degree)> = BTreeSet::new();
    for table in [&minimal, &total] {
        for (i, d) in table.dims.keys() {
            let (a, b) = d.split(m);
            keys.insert((*i, a, b));
        }
    }
    for ((i, a), _) in &left.dims {
        for ((j, b), _) in &right.dims {
            if i + j <= trunc {
                keys.insert((i + j, a.clone(), b.clone()));
            }
        }
    }
    let rows = keys
        .into_iter()
        .filter(|(_, a, b)| in_kernels(a, b))
        .map(|(deg, a, b)| {
            let product = (0..=deg).map(|i| left.dim(i, &a) * right.dim(deg - i, &b)).sum();
            let ab = a.concat(&b);
            HhKunnethRow {
                degree: deg,
                left_internal: a.0.clone(),
                right_internal: b.0.clone(),
                product,
                minimal: minimal.dim(deg, &ab),
                total: total.dim(deg, &ab),
            }
        })
        .collect();
    let fmt = |basis: &[Vec<num_bigint::BigInt>]| basis.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
    Ok(HhKunnethReport {
        left_kernel: fmt(a_prime.basis()),
        right_kernel: fmt(b_prime.basis()),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativityReport {
    pub products_checked: usize,
    /// (i, a, j, b) of basis pairs with ξη ≠ (−1)^{ij} ηξ
    pub failures: Vec<(usize, Vec<i64>, usize, Vec<i64>)>,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.products_checked > 0 && self.failures.is_empty()
    }
}

/// Check ξη = (−1)^{ij} ηξ on all pairs of basis classes with i + j ≤ trunc.
pub fn hh_graded_commutativity(alg: &Arc<GradedAlgebra>, trunc: usize, allow_large: bool) -> Result<CommutativityReport> {
    let engine = hochschild_engine(alg, trunc, allow_large)?;
    let k = alg.field().clone();
    let table = engine.table(trunc)?;
    let mut classes: Vec<(CohomologyClass, Vec<Vec<SparseVec>>)> = Vec::new();
    for (i, a) in table.dims.keys() {
        for c in engine.class_basis(*i, a)? {
            let lift = engine.lift(&c, trunc - i)?;
            classes.push((c, lift));
        }
    }
    let mut report = CommutativityReport {
        products_checked: 0,
        failures: Vec::new(),
    };
    for (x, (xi, xl)) in classes.iter().enumerate() {
        for (eta, el) in classes.iter().skip(x) {
            if xi.degree + eta.degree > trunc {
                continue;
            }
            let lhs = engine.yoneda_with_lift(xi, eta, xl)?;
            let rhs = engine.yoneda_with_lift(eta, xi, el)?;
            let sign = if xi.degree * eta.degree % 2 == 1 { k.int(-1) } else { k.one() };
            let diff = engine.combine(&[(k.one(), &lhs), (k.neg(&sign), &rhs)])?;
            report.products_checked += 1;
            if !engine.is_zero_class(&diff)? {
                report
                    .failures
                    .push((xi.degree, xi.internal.0.clone(), eta.degree, eta.internal.0.clone()));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{truncated_polynomial, BasisElement};
    use crate::{Field, Twist, UnitDescriptor};

    fn trunc_poly(k: &Field, a: usize) -> Arc<GradedAlgebra> {
        Arc::new(truncated_polynomial(k, a).unwrap())
    }

    #[test]
    fn dual_numbers_in_char_zero_and_two() {
        let q = Field::rationals();
        let t = hochschild_table(&trunc_poly(&q, 2), 4, false).unwrap();
        assert_eq!(t.totals(), vec![2, 1, 1, 1, 1]);
        let f2 = Field::prime(2).unwrap();
        let t = hochschild_table(&trunc_poly(&f2, 2), 4, false).unwrap();
        assert_eq!(t.totals(), vec![2, 2, 2, 2, 2]);
    }

    #[test]
    fn periodic_and_minimal_agree() {
        let k = Field::prime(3).unwrap();
        let alg = trunc_poly(&k, 3);
        let env = Arc::new(enveloping(&alg));
        let lam = GradedModule::algebra_as_bimodule(&alg, env.clone()).unwrap();
        let res = minimal_resolution(env, &lam, 5).unwrap();
        let e = ExtEngine::new(res, lam).unwrap();
        assert_eq!(e.table(4).unwrap(), hochschild_table(&alg, 4, false).unwrap());
    }

    #[test]
    fn trivial_algebra() {
        let k = Field::rationals();
        let basis = vec![BasisElement { label: "1".into(), degree: Degree::zero(1) }];
        let one = Arc::new(GradedAlgebra::new(k.clone(), 1, basis, 0, vec![vec![(0, k.one())]]).unwrap());
        let t = hochschild_table(&one, 3, false).unwrap();
        assert_eq!(t.totals(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn kunneth_at_minus_one() {
        let k = Field::rationals();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::minus_one()]]).unwrap();
        let tp = TwistedProduct::new(trunc_poly(&k, 2), trunc_poly(&k, 2), t).unwrap();
        let r = hochschild_kunneth_check(&tp, 3, false).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches());
    }

    #[test]
    fn commutative_in_range() {
        let k = Field::rationals();
        let r = hh_graded_commutativity(&trunc_poly(&k, 3), 4, false).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn guard_trips() {
        let k = Field::rationals();
        let err = hochschild_table(&trunc_poly(&k, 40), 1, false).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }));
    }
}
