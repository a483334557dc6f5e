//! Finite-dimensional ℤ^m-graded algebras given by structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, UnitDescriptor};
use crate::grading::{Degree, Twist};
use crate::linalg::{axpy, SparseVec};

/// An element of an algebra in basis coordinates.
pub type AlgElem = SparseVec;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: Degree,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    field: Field,
    rank: usize,
    basis: Vec<BasisElement>,
    unit: usize,
    /// `products[u * dim + v]` = e_u · e_v
    products: Vec<AlgElem>,
    connected: bool,
}

impl GradedAlgebra {
    /// Build from explicit data; checks homogeneity and the unit laws.
    pub fn new(
        field: Field,
        rank: usize,
        basis: Vec<BasisElement>,
        unit: usize,
        products: Vec<AlgElem>,
    ) -> Result<Self> {
        let d = basis.len();
        if products.len() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "expected {} products, got {}",
                d * d,
                products.len()
            )));
        }
        if unit >= d {
            return Err(Error::InvalidArgument("unit index out of range".into()));
        }
        if let Some(b) = basis.iter().find(|b| b.degree.rank() != rank) {
            return Err(Error::DimensionMismatch(format!(
                "basis element {} has degree of rank {}",
                b.label,
                b.degree.rank()
            )));
        }
        for u in 0..d {
            for v in 0..d {
                for (w, _) in &products[u * d + v] {
                    if *w >= d || basis[*w].degree != &basis[u].degree + &basis[v].degree {
                        return Err(Error::InvalidArgument(format!(
                            "product {}·{} is not homogeneous",
                            basis[u].label, basis[v].label
                        )));
                    }
                }
            }
        }
        let one = field.one();
        for u in 0..d {
            let e = vec![(u, one.clone())];
            if products[unit * d + u] != e || products[u * d + unit] != e {
                return Err(Error::InvalidArgument(format!(
                    "unit law fails at {}",
                    basis[u].label
                )));
            }
        }
        let connected = basis[unit].degree.is_zero()
            && basis
                .iter()
                .enumerate()
                .all(|(i, b)| i == unit || b.degree.is_positive());
        Ok(GradedAlgebra {
            field,
            rank,
            basis,
            unit,
            products,
            connected,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn grading_rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, u: usize) -> &Degree {
        &self.basis[u].degree
    }

    pub fn label(&self, u: usize) -> &str {
        &self.basis[u].label
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn one(&self) -> AlgElem {
        vec![(self.unit, self.field.one())]
    }

    /// Connected graded: degree zero is spanned by the unit and all other
    /// basis degrees are nonnegative.
    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn basis_product(&self, u: usize, v: usize) -> &AlgElem {
        &self.products[u * self.dim() + v]
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let k = &self.field;
        let mut out = Vec::new();
        for (u, x) in a {
            for (v, y) in b {
                let c = k.mul(x, y);
                out = axpy(k, &out, &c, self.basis_product(*u, *v));
            }
        }
        out
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Basis indices grouped by degree.
    pub fn degree_blocks(&self) -> BTreeMap<Degree, Vec<usize>> {
        let mut out: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            out.entry(b.degree.clone()).or_default().push(i);
        }
        out
    }

    /// First failing basis triple for associativity, if any.
    pub fn check_associativity(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let d = self.dim();
        for u in 0..d {
            for v in 0..d {
                let uv = self.basis_product(u, v);
                for w in 0..d {
                    let left = self.mul(uv, &vec![(w, self.field.one())]);
                    let right = self.mul(&vec![(u, self.field.one())], self.basis_product(v, w));
                    if left != right {
                        return Err((u, v, w));
                    }
                }
            }
        }
        Ok(())
    }

    /// Same structure constants and degrees (labels may differ).
    pub fn same_structure(&self, other: &GradedAlgebra) -> bool {
        self.dim() == other.dim()
            && self.unit == other.unit
            && self.rank == other.rank
            && self
                .basis
                .iter()
                .zip(&other.basis)
                .all(|(a, b)| a.degree == b.degree)
            && self.products == other.products
    }

    pub fn with_labels(&self, labels: Vec<String>) -> GradedAlgebra {
        let mut out = self.clone();
        for (b, l) in out.basis.iter_mut().zip(labels) {
            b.label = l;
        }
        out
    }

    /// Forget the grading (grading rank 0).
    pub fn ungraded(&self) -> GradedAlgebra {
        let mut out = self.clone();
        out.rank = 0;
        for b in out.basis.iter_mut() {
            b.degree = Degree::zero(0);
        }
        out.connected = out.dim() == 1;
        out
    }

    pub fn opposite(&self) -> GradedAlgebra {
        let d = self.dim();
        let mut products = vec![Vec::new(); d * d];
        for u in 0..d {
            for v in 0..d {
                products[u * d + v] = self.products[v * d + u].clone();
            }
        }
        GradedAlgebra {
            products,
            ..self.clone()
        }
    }

    /// Whether this is k[x]/(x^a) presented on 1, x, …, x^{a−1} with |x| of rank 1;
    /// returns `a`.
    pub fn truncated_polynomial_exponent(&self) -> Option<usize> {
        let d = self.dim();
        if self.rank != 1 || d < 2 || self.unit != 0 {
            return None;
        }
        let one = self.field.one();
        for i in 0..d {
            if self.basis[i].degree.0[0] != i as i64 {
                return None;
            }
            for j in 0..d {
                let want = if i + j < d { vec![(i + j, one.clone())] } else { Vec::new() };
                if self.products[i * d + j] != want {
                    return None;
                }
            }
        }
        Some(d)
    }

    /// Human-readable element, e.g. "2*x1 + (q)*x2".
    pub fn format_element(&self, a: &AlgElem) -> String {
        let k = &self.field;
        if a.is_empty() {
            return "0".into();
        }
        let neg_one = k.int(-1);
        a.iter()
            .map(|(u, c)| {
                let label = self.label(*u);
                let coeff = k.format(c);
                let coeff = if coeff.contains([' ', '/']) { format!("({coeff})") } else { coeff };
                match (u == &self.unit, k.is_one(c), c == &neg_one) {
                    (true, _, _) => coeff,
                    (false, true, _) => label.to_string(),
                    (false, _, true) => format!("-{label}"),
                    _ => format!("{coeff}*{label}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let k = &self.field;
        let constants: Vec<serde_json::Value> = (0..self.dim())
            .flat_map(|u| (0..self.dim()).map(move |v| (u, v)))
            .filter(|(u, v)| !self.basis_product(*u, *v).is_empty())
            .map(|(u, v)| {
                serde_json::json!({
                    "left": u,
                    "right": v,
                    "result": self.basis_product(u, v)
                        .iter()
                        .map(|(w, c)| serde_json::json!([w, k.format(c)]))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "field": k.name(),
            "grading_rank": self.rank,
            "unit": self.unit,
            "basis": self.basis,
            "structure_constants": constants,
        })
    }
}

/// k⟨x₁,…,x_n⟩/(x_i^{a_i}, x_j x_i − q_ij x_i x_j).
#[derive(Clone, Debug, PartialEq)]
pub struct QciSpec {
    field: Field,
    exponents: Vec<usize>,
    /// q[i][j] for i < j; other entries unused
    q: Vec<Vec<UnitDescriptor>>,
}

impl QciSpec {
    /// `commutators` lists `(i, j, q_ij)` with 0-based `i < j`; missing pairs are 1.
    pub fn new(
        field: Field,
        exponents: Vec<usize>,
        commutators: Vec<(usize, usize, UnitDescriptor)>,
    ) -> Result<Self> {
        let n = exponents.len();
        if n == 0 {
            return Err(Error::InvalidSpec("need at least one variable".into()));
        }
        if let Some(a) = exponents.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidSpec(format!("exponent {a} < 2")));
        }
        let mut q = vec![vec![UnitDescriptor::one(); n]; n];
        for (i, j, u) in commutators {
            if i >= j || j >= n {
                return Err(Error::InvalidSpec(format!("bad commutator index ({i},{j})")));
            }
            if field.unit_eval(&u)?.is_zero() {
                return Err(Error::InvalidSpec("commutator is zero".into()));
            }
            q[i][j] = u;
        }
        Ok(QciSpec { field, exponents, q })
    }

    /// Same commutator for every pair.
    pub fn uniform(field: Field, exponents: Vec<usize>, q: UnitDescriptor) -> Result<Self> {
        let n = exponents.len();
        let pairs = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, q.clone()))
            .collect();
        QciSpec::new(field, exponents, pairs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn q(&self, i: usize, j: usize) -> &UnitDescriptor {
        assert!(i < j);
        &self.q[i][j]
    }

    pub fn dim(&self) -> usize {
        self.exponents.iter().product()
    }

    /// The spec on the first `m` variables.
    pub fn truncate(&self, m: usize) -> QciSpec {
        QciSpec {
            field: self.field.clone(),
            exponents: self.exponents[..m].to_vec(),
            q: self.q[..m].iter().map(|r| r[..m].to_vec()).collect(),
        }
    }

    /// Twist t((d₁..d_{n−1}), d_n) = ∏ q_{in}^{d_i d_n} splitting off the last variable.
    pub fn last_variable_twist(&self) -> Result<Twist> {
        let n = self.n();
        let matrix = (0..n - 1).map(|i| vec![self.q[i][n - 1].clone()]).collect();
        Twist::from_units(&self.field, matrix)
    }
}

fn monomial_label(d: &[usize]) -> String {
    let parts: Vec<String> = d
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Exponent vectors in mixed radix, last variable fastest.
fn exponent_vectors(exponents: &[usize]) -> Vec<Vec<usize>> {
    let total: usize = exponents.iter().product();
    (0..total)
        .map(|mut idx| {
            let mut d = vec![0; exponents.len()];
            for i in (0..exponents.len()).rev() {
                d[i] = idx % exponents[i];
                idx /= exponents[i];
            }
            d
        })
        .collect()
}

fn exponent_index(exponents: &[usize], d: &[usize]) -> usize {
    d.iter().zip(exponents).fold(0, |acc, (x, a)| acc * a + x)
}

/// Normal-form monomial basis with x^d · x^e = (∏_{i<j} q_ij^{e_i d_j}) x^{d+e}.
pub fn qci_construct(spec: &QciSpec) -> Result<GradedAlgebra> {
    let k = spec.field.clone();
    let n = spec.n();
    let qv: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i < j {
                        k.unit_eval(&spec.q[i][j])
                    } else {
                        Ok(k.one())
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let vecs = exponent_vectors(&spec.exponents);
    let basis: Vec<BasisElement> = vecs
        .iter()
        .map(|d| BasisElement {
            label: monomial_label(d),
            degree: Degree(d.iter().map(|&x| x as i64).collect()),
        })
        .collect();
    let dim = vecs.len();
    let mut products = vec![Vec::new(); dim * dim];
    for (u, d) in vecs.iter().enumerate() {
        for (v, e) in vecs.iter().enumerate() {
            let sum: Vec<usize> = d.iter().zip(e).map(|(a, b)| a + b).collect();
            if sum.iter().zip(&spec.exponents).any(|(s, a)| s >= a) {
                continue;
            }
            let mut c = k.one();
            for i in 0..n {
                for j in i + 1..n {
                    let p = (e[i] * d[j]) as i64;
                    if p > 0 {
                        c = k.mul(&c, &k.pow(&qv[i][j], p)?);
                    }
                }
            }
            products[u * dim + v] = vec![(exponent_index(&spec.exponents, &sum), c)];
        }
    }
    GradedAlgebra::new(k, n, basis, 0, products)
}

/// k[x]/(x^a) with |x| = 1.
pub fn truncated_polynomial(field: &Field, a: usize) -> Result<GradedAlgebra> {
    let spec = QciSpec::new(field.clone(), vec![a], Vec::new())?;
    let alg = qci_construct(&spec)?;
    let labels = (0..a)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    Ok(alg.with_labels(labels))
}

fn pair_label(a: &str, b: &str) -> String {
    format!("{a}⊗{b}")
}

/// Λ ⊗ᵗ Γ with (λ⊗γ)(λ′⊗γ′) = t(|λ′|, |γ|) λλ′ ⊗ γγ′, basis index u·dim Γ + v.
pub fn twisted_tensor_algebra(
    left: &GradedAlgebra,
    right: &GradedAlgebra,
    t: &Twist,
) -> Result<GradedAlgebra> {
    if t.dims() != (left.grading_rank(), right.grading_rank()) {
        return Err(Error::DimensionMismatch(format!(
            "twist of shape {:?} for gradings of rank {} and {}",
            t.dims(),
            left.grading_rank(),
            right.grading_rank()
        )));
    }
    let k = left.field().clone();
    let (dl, dr) = (left.dim(), right.dim());
    let basis: Vec<BasisElement> = (0..dl)
        .flat_map(|u| (0..dr).map(move |v| (u, v)))
        .map(|(u, v)| BasisElement {
            label: pair_label(left.label(u), right.label(v)),
            degree: left.degree(u).concat(right.degree(v)),
        })
        .collect();
    let dim = dl * dr;
    let mut products = vec![Vec::new(); dim * dim];
    for u in 0..dl {
        for v in 0..dr {
            for u2 in 0..dl {
                let lp = left.basis_product(u, u2);
                if lp.is_empty() {
                    continue;
                }
                for v2 in 0..dr {
                    let rp = right.basis_product(v, v2);
                    if rp.is_empty() {
                        continue;
                    }
                    let s = t.eval(left.degree(u2), right.degree(v))?;
                    let mut out: SparseVec = Vec::new();
                    for (a, x) in lp {
                        for (b, y) in rp {
                            out.push((a * dr + b, k.mul(&s, &k.mul(x, y))));
                        }
                    }
                    out.sort_by_key(|(i, _)| *i);
                    out.retain(|(_, c)| !c.is_zero());
                    products[(u * dr + v) * dim + (u2 * dr + v2)] = out;
                }
            }
        }
    }
    GradedAlgebra::new(
        k,
        left.grading_rank() + right.grading_rank(),
        basis,
        left.unit_index() * dr + right.unit_index(),
        products,
    )
}

/// Λ^e = Λ ⊗ Λ^op, graded by total degree so that Λ is a graded Λ^e-module;
/// basis index u·dim Λ + v stands for e_u ⊗ e_v^op, acting as x ↦ e_u x e_v.
pub fn enveloping(alg: &GradedAlgebra) -> GradedAlgebra {
    let k = alg.field().clone();
    let d = alg.dim();
    let basis: Vec<BasisElement> = (0..d)
        .flat_map(|u| (0..d).map(move |v| (u, v)))
        .map(|(u, v)| BasisElement {
            label: format!("{}|{}", alg.label(u), alg.label(v)),
            degree: alg.degree(u) + alg.degree(v),
        })
        .collect();
    let dim = d * d;
    let mut products = vec![Vec::new(); dim * dim];
    for u in 0..d {
        for v in 0..d {
            for u2 in 0..d {
                let lp = alg.basis_product(u, u2);
                if lp.is_empty() {
                    continue;
                }
                for v2 in 0..d {
                    // (u⊗v)(u2⊗v2) = u u2 ⊗ v2 v
                    let rp = alg.basis_product(v2, v);
                    let mut out: SparseVec = Vec::new();
                    for (a, x) in lp {
                        for (b, y) in rp {
                            out.push((a * d + b, k.mul(x, y)));
                        }
                    }
                    out.sort_by_key(|(i, _)| *i);
                    products[(u * d + v) * dim + (u2 * d + v2)] = out;
                }
            }
        }
    }
    GradedAlgebra::new(
        k,
        alg.grading_rank(),
        basis,
        alg.unit_index() * d + alg.unit_index(),
        products,
    )
    .expect("enveloping algebra of a valid algebra is valid")
}

pub fn opposite(alg: &GradedAlgebra) -> GradedAlgebra {
    alg.opposite()
}

/// Λ ⊗ᵗ Γ together with the factors and twist, and lazily built enveloping algebras.
#[derive(Clone, Debug)]
pub struct TwistedProduct {
    pub left: Arc<GradedAlgebra>,
    pub right: Arc<GradedAlgebra>,
    pub twist: Twist,
    pub algebra: Arc<GradedAlgebra>,
    envelopes: std::sync::OnceLock<[Arc<GradedAlgebra>; 3]>,
}

impl TwistedProduct {
    pub fn new(left: Arc<GradedAlgebra>, right: Arc<GradedAlgebra>, twist: Twist) -> Result<Self> {
        let algebra = Arc::new(twisted_tensor_algebra(&left, &right, &twist)?);
        Ok(TwistedProduct {
            left,
            right,
            twist,
            algebra,
            envelopes: std::sync::OnceLock::new(),
        })
    }

    fn envelopes(&self) -> &[Arc<GradedAlgebra>; 3] {
        self.envelopes.get_or_init(|| {
            [
                Arc::new(enveloping(&self.left)),
                Arc::new(enveloping(&self.right)),
                Arc::new(enveloping(&self.algebra)),
            ]
        })
    }

    pub fn left_envelope(&self) -> Arc<GradedAlgebra> {
        self.envelopes()[0].clone()
    }

    pub fn right_envelope(&self) -> Arc<GradedAlgebra> {
        self.envelopes()[1].clone()
    }

    pub fn envelope(&self) -> Arc<GradedAlgebra> {
        self.envelopes()[2].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qci22(k: &Field, q: UnitDescriptor) -> GradedAlgebra {
        qci_construct(&QciSpec::uniform(k.clone(), vec![2, 2], q).unwrap()).unwrap()
    }

    fn e(alg: &GradedAlgebra, label: &str) -> AlgElem {
        vec![(alg.index_of_label(label).unwrap(), alg.field().one())]
    }

    #[test]
    fn truncated_cubic() {
        let k = Field::rationals();
        let a = truncated_polynomial(&k, 3).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.mul(&e(&a, "x"), &e(&a, "x^2")).is_empty());
        assert_eq!(a.truncated_polynomial_exponent(), Some(3));
        assert!(a.is_connected());
    }

    #[test]
    fn quantum_plane_relation() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let a = qci22(&k, UnitDescriptor::var("q"));
        let q = k.var("q").unwrap();
        let x2x1 = a.mul(&e(&a, "x2"), &e(&a, "x1"));
        assert_eq!(x2x1, vec![(a.index_of_label("x1*x2").unwrap(), q)]);
        // (x1 x2) x1 = q x1² x2 = 0
        assert!(a.mul(&e(&a, "x1*x2"), &e(&a, "x1")).is_empty());
        assert!(a.check_associativity().is_ok());
    }

    #[test]
    fn qci_dimension_is_product_of_exponents() {
        let k = Field::prime(5).unwrap();
        let spec = QciSpec::uniform(k, vec![2, 3, 4], UnitDescriptor::root(4, 1)).unwrap();
        let a = qci_construct(&spec).unwrap();
        assert_eq!(a.dim(), 24);
        assert!(a.check_associativity().is_ok());
    }

    #[test]
    fn invalid_specs_rejected() {
        let k = Field::rationals();
        assert!(QciSpec::new(k.clone(), vec![1], vec![]).is_err());
        assert!(QciSpec::new(k.clone(), vec![], vec![]).is_err());
        assert!(QciSpec::new(k, vec![2, 2], vec![(1, 0, UnitDescriptor::one())]).is_err());
    }

    #[test]
    fn opposite_of_quantum_plane_inverts_q() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let a = qci22(&k, UnitDescriptor::var("q"));
        let op = a.opposite();
        let q = k.var("q").unwrap();
        // in the opposite: x2 * x1 = x1 x2 (original) so x1*x2 = q^{-1} x2*x1
        let x1x2 = op.mul(&e(&op, "x1"), &e(&op, "x2"));
        let x2x1 = op.mul(&e(&op, "x2"), &e(&op, "x1"));
        assert_eq!(x2x1, vec![(a.index_of_label("x1*x2").unwrap(), k.one())]);
        assert_eq!(x1x2, vec![(a.index_of_label("x1*x2").unwrap(), q)]);
        assert!(op.check_associativity().is_ok());
        let comm = truncated_polynomial(&k, 3).unwrap();
        assert!(comm.opposite().same_structure(&comm));
    }

    #[test]
    fn enveloping_dimension_and_associativity() {
        let k = Field::rationals();
        let a = qci22(&k, UnitDescriptor::minus_one());
        let env = enveloping(&a);
        assert_eq!(env.dim(), 16);
        assert!(env.check_associativity().is_ok());
    }

    #[test]
    fn qci_is_iterated_twisted_tensor() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let spec = QciSpec::uniform(k.clone(), vec![2, 3], UnitDescriptor::var("q")).unwrap();
        let direct = qci_construct(&spec).unwrap();
        let g1 = truncated_polynomial(&k, 2).unwrap();
        let g2 = truncated_polynomial(&k, 3).unwrap();
        let t = spec.last_variable_twist().unwrap();
        let tensor = twisted_tensor_algebra(&g1, &g2, &t).unwrap();
        assert!(direct.same_structure(&tensor));
    }

    #[test]
    fn twisted_product_formula() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let g = truncated_polynomial(&k, 2).unwrap();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::var("q")]]).unwrap();
        let c = twisted_tensor_algebra(&g, &g, &t).unwrap();
        // (1⊗x)(x⊗1) = t(|x|,|x|) x⊗x
        let lhs = c.mul(&e(&c, "1⊗x"), &e(&c, "x⊗1"));
        assert_eq!(lhs, vec![(c.index_of_label("x⊗x").unwrap(), k.var("q").unwrap())]);
        let triv = twisted_tensor_algebra(&g, &g, &Twist::trivial(&k, 1, 1)).unwrap();
        let lhs = triv.mul(&e(&triv, "1⊗x"), &e(&triv, "x⊗1"));
        assert_eq!(lhs, e(&triv, "x⊗x"));
        assert!(twisted_tensor_algebra(&g, &g, &Twist::trivial(&k, 2, 1)).is_err());
    }
}
