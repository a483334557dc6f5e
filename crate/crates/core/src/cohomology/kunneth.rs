//! Ext of a twisted tensor product of modules against the t̃-twisted tensor of the factors' Ext.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{GradedAlgebra, TwistedProduct};
use crate::cohomology::ext::{CohomologyClass, ExtEngine, ExtTable};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::grading::Degree;
use crate::linalg::SparseVec;
use crate::module::{outer, GradedModule};
use crate::resolution::{minimal_resolution, periodic_module_resolution_over, Resolution};
use crate::total::{twisted_total_resolution, TensorKind};

/// Periodic resolution for k over k[x]/(x^a), minimal otherwise.
pub fn module_resolution(alg: &Arc<GradedAlgebra>, m: &GradedModule, trunc: usize) -> Result<Resolution> {
    let trivial = m.dim() == 1 && m.degree(0).is_zero();
    if trivial && alg.truncated_polynomial_exponent().is_some() {
        return periodic_module_resolution_over(alg.clone(), trunc);
    }
    minimal_resolution(alg.clone(), m, trunc)
}

/// Engines for Ext_Λ(M,M), Ext_Γ(N,N) and Ext_{Λ⊗ᵗΓ}(M⊗N, M⊗N), the last from the total complex.
pub struct KunnethEngines {
    pub tp: TwistedProduct,
    pub left: ExtEngine,
    pub right: ExtEngine,
    pub tensor: ExtEngine,
}

impl KunnethEngines {
    pub fn new(tp: &TwistedProduct, m: &GradedModule, n: &GradedModule, trunc: usize) -> Result<Self> {
        let p = module_resolution(&tp.left, m, trunc + 1)?;
        let q = module_resolution(&tp.right, n, trunc + 1)?;
        let tot = twisted_total_resolution(tp, &p, &q, TensorKind::Module, trunc + 1)?;
        let (pm, qn, tm) = (p.target().clone(), q.target().clone(), tot.target().clone());
        Ok(KunnethEngines {
            tp: tp.clone(),
            left: ExtEngine::new(p, pm)?,
            right: ExtEngine::new(q, qn)?,
            tensor: ExtEngine::new(tot, tm)?,
        })
    }

    /// Generator offset of the (i, j) block inside Tot_{i+j}.
    fn block_offset(&self, i: usize, j: usize) -> usize {
        let (p, q) = (self.left.resolution(), self.right.resolution());
        (0..i)
            .filter(|&i2| i2 <= p.length() && i + j - i2 <= q.length())
            .map(|i2| p.term(i2).rank() * q.term(i + j - i2).rank())
            .sum()
    }

    /// ξ × η on Tot: e_g ⊗ e_h ↦ (−1)^{ij} t(|ξ|, |e_h|)^{-1} ξ(e_g) ⊗ η(e_h) on the (i, j) block,
    /// zero elsewhere. The sign is the Koszul sign of passing η over e_g.
    pub fn cross(&self, xi: &CohomologyClass, eta: &CohomologyClass) -> Result<CohomologyClass> {
        let k = self.tp.algebra.field();
        let (i, j) = (xi.degree, eta.degree);
        let (p, q, tot) = (self.left.resolution(), self.right.resolution(), self.tensor.resolution());
        if i + j > tot.length() {
            return Err(Error::InvalidArgument("cross product beyond the resolution".into()));
        }
        let nd = self.right.coefficients().dim();
        let mut cocycle: Vec<SparseVec> = vec![Vec::new(); tot.term(i + j).rank()];
        let start = self.block_offset(i, j);
        let qj = q.term(j);
        for g in 0..p.term(i).rank() {
            for h in 0..qj.rank() {
                let mut s = k.inv(&self.tp.twist.eval(&xi.internal, &qj.shifts()[h])?)?;
                if i * j % 2 == 1 {
                    s = k.neg(&s);
                }
                cocycle[start + g * qj.rank() + h] = outer(k, &s, &xi.cocycle[g], &eta.cocycle[h], nd);
            }
        }
        Ok(CohomologyClass {
            degree: i + j,
            internal: xi.internal.concat(&eta.internal),
            cocycle,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub degree: usize,
    pub internal: Vec<i64>,
    pub convolution: usize,
    pub tensor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductFailure {
    /// (i, a) of ξ₁, η₁, ξ₂, η₂
    pub factors: Vec<(usize, Vec<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtKunnethReport {
    pub dims: Vec<DimRow>,
    pub products_checked: usize,
    pub product_failures: Vec<ProductFailure>,
    /// failures when the scalar t̃ is replaced by t
    pub negative_control_failures: usize,
}

impl ExtKunnethReport {
    pub fn dims_pass(&self) -> bool {
        self.dims.iter().all(|r| r.convolution == r.tensor)
    }

    pub fn products_pass(&self) -> bool {
        self.products_checked > 0 && self.product_failures.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.dims_pass() && self.products_pass()
    }
}

/// Scalar rule relating (ξ₁×η₁)(ξ₂×η₂) to ξ₁ξ₂ × η₁η₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductTwist {
    /// t̃((i₂,a₂),(j₁,b₁)) = (−1)^{i₂j₁} t(a₂,b₁)
    Tilde,
    /// t(a₂,b₁) without the sign; a negative control
    Plain,
}

fn convolution(left: &ExtTable, right: &ExtTable, m: usize, a: &Degree, b: &Degree) -> usize {
    (0..=m).map(|i| left.dim(i, a) * right.dim(m - i, b)).sum()
}

pub fn ext_kunneth_check(
    tp: &TwistedProduct,
    m: &GradedModule,
    n: &GradedModule,
    trunc: usize,
) -> Result<ExtKunnethReport> {
    let e = KunnethEngines::new(tp, m, n, trunc)?;
    let (lt, rt, tt) = (e.left.table(trunc)?, e.right.table(trunc)?, e.tensor.table(trunc)?);
    let rank = tp.left.grading_rank();
    let mut keys: BTreeSet<(usize, Degree, Degree)> = tt
        .dims
        .keys()
        .map(|(i, d)| {
            let (a, b) = d.split(rank);
            (*i, a, b)
        })
        .collect();
    for (i, a) in lt.dims.keys() {
        for (j, b) in rt.dims.keys() {
            if i + j <= trunc {
                keys.insert((i + j, a.clone(), b.clone()));
            }
        }
    }
    let dims = keys
        .into_iter()
        .map(|(deg, a, b)| {
            let ab = a.concat(&b);
            DimRow {
                degree: deg,
                convolution: convolution(&lt, &rt, deg, &a, &b),
                tensor: tt.dim(deg, &ab),
                internal: ab.0,
            }
        })
        .collect();
    let (checked, failures) = product_comparison(&e, &lt, &rt, trunc, ProductTwist::Tilde)?;
    let (_, negative) = product_comparison(&e, &lt, &rt, trunc, ProductTwist::Plain)?;
    Ok(ExtKunnethReport {
        dims,
        products_checked: checked,
        product_failures: failures,
        negative_control_failures: negative.len(),
    })
}

fn basis(e: &ExtEngine, t: &ExtTable) -> Result<Vec<CohomologyClass>> {
    let mut out = Vec::new();
    for (i, a) in t.dims.keys() {
        out.extend(e.class_basis(*i, a)?);
    }
    Ok(out)
}

/// Compare (ξ₁×η₁)(ξ₂×η₂) with the twisted scalar times ξ₁ξ₂ × η₁η₂ on all basis quadruples in range.
pub fn product_comparison(
    e: &KunnethEngines,
    lt: &ExtTable,
    rt: &ExtTable,
    trunc: usize,
    rule: ProductTwist,
) -> Result<(usize, Vec<ProductFailure>)> {
    let k = e.tp.algebra.field().clone();
    let (lb, rb) = (basis(&e.left, lt)?, basis(&e.right, rt)?);
    let mut checked = 0;
    let mut failures = Vec::new();
    // cross products of basis pairs with their lifts, built on demand
    let mut crosses: Vec<(usize, usize, CohomologyClass, Vec<Vec<SparseVec>>)> = Vec::new();
    for (x, xi) in lb.iter().enumerate() {
        for (y, eta) in rb.iter().enumerate() {
            if xi.degree + eta.degree <= trunc {
                let c = e.cross(xi, eta)?;
                let lift = e.tensor.lift(&c, trunc - c.degree)?;
                crosses.push((x, y, c, lift));
            }
        }
    }
    for (x1, y1, c1, l1) in &crosses {
        for (x2, y2, c2, _) in &crosses {
            if c1.degree + c2.degree > trunc {
                continue;
            }
            let (xi1, eta1, xi2, eta2) = (&lb[*x1], &rb[*y1], &lb[*x2], &rb[*y2]);
            let lhs = e.tensor.yoneda_with_lift(c1, c2, l1)?;
            let xx = e.left.yoneda_product(xi1, xi2)?;
            let yy = e.right.yoneda_product(eta1, eta2)?;
            let rhs = e.cross(&xx, &yy)?;
            let s = scalar(&k, e, rule, xi2, eta1)?;
            let diff = e.tensor.combine(&[(k.one(), &lhs), (k.neg(&s), &rhs)])?;
            checked += 1;
            if !e.tensor.is_zero_class(&diff)? {
                failures.push(ProductFailure {
                    factors: [xi1, eta1, xi2, eta2]
                        .iter()
                        .map(|c| (c.degree, c.internal.0.clone()))
                        .collect(),
                });
            }
        }
    }
    Ok((checked, failures))
}

fn scalar(
    k: &crate::Field,
    e: &KunnethEngines,
    rule: ProductTwist,
    xi2: &CohomologyClass,
    eta1: &CohomologyClass,
) -> Result<FieldElement> {
    let t = e.tp.twist.eval(&xi2.internal, &eta1.internal)?;
    Ok(match rule {
        ProductTwist::Plain => t,
        ProductTwist::Tilde if xi2.degree * eta1.degree % 2 == 1 => k.neg(&t),
        ProductTwist::Tilde => t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_polynomial;
    use crate::{Field, Twist, UnitDescriptor};

    fn setup(k: &Field, a: usize, b: usize, q: UnitDescriptor) -> (TwistedProduct, GradedModule, GradedModule) {
        let t = Twist::from_units(k, vec![vec![q]]).unwrap();
        let tp = TwistedProduct::new(
            Arc::new(truncated_polynomial(k, a).unwrap()),
            Arc::new(truncated_polynomial(k, b).unwrap()),
            t,
        )
        .unwrap();
        let m = GradedModule::trivial(tp.left.clone()).unwrap();
        let n = GradedModule::trivial(tp.right.clone()).unwrap();
        (tp, m, n)
    }

    #[test]
    fn untwisted_dual_numbers() {
        let (tp, m, n) = setup(&Field::rationals(), 2, 2, UnitDescriptor::one());
        let r = ext_kunneth_check(&tp, &m, &n, 4).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.negative_control_failures > 0);
    }

    #[test]
    fn generic_q() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let (tp, m, n) = setup(&k, 2, 3, UnitDescriptor::var("q"));
        let r = ext_kunneth_check(&tp, &m, &n, 4).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn minus_one_at_trunc_six() {
        let (tp, m, n) = setup(&Field::rationals(), 2, 3, UnitDescriptor::minus_one());
        let r = ext_kunneth_check(&tp, &m, &n, 6).unwrap();
        assert!(r.passed(), "{:?}", r.product_failures);
        assert!(r.negative_control_failures > 0);
    }
}
