//! Finite-dimensional graded left modules and twisted tensor products of them.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{AlgElem, GradedAlgebra, TwistedProduct};
use crate::error::{Error, Result};
use crate::grading::Degree;
use crate::linalg::{axpy, Echelon, Insert, Matrix, SparseVec};

#[derive(Clone, Debug)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    degrees: Vec<Degree>,
    labels: Vec<String>,
    /// `action[u][b]` = e_u · m_b
    action: Vec<Vec<SparseVec>>,
}

impl GradedModule {
    pub fn new(
        algebra: Arc<GradedAlgebra>,
        degrees: Vec<Degree>,
        labels: Vec<String>,
        action: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let dim = degrees.len();
        if labels.len() != dim || action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch("module data has inconsistent sizes".into()));
        }
        let rank = algebra.grading_rank();
        if degrees.iter().any(|d| d.rank() != rank) {
            return Err(Error::DimensionMismatch("module degree rank differs from algebra".into()));
        }
        for (u, row) in action.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!("action row {u} has wrong length")));
            }
            for (b, img) in row.iter().enumerate() {
                let want = algebra.degree(u) + &degrees[b];
                if img.iter().any(|(c, _)| *c >= dim || degrees[*c] != want) {
                    return Err(Error::InvalidArgument(format!(
                        "action of {} on {} is not homogeneous",
                        algebra.label(u),
                        labels[b]
                    )));
                }
            }
        }
        let one = algebra.field().one();
        let unit = &action[algebra.unit_index()];
        if (0..dim).any(|b| unit[b] != vec![(b, one.clone())]) {
            return Err(Error::InvalidArgument("unit does not act as the identity".into()));
        }
        Ok(GradedModule {
            algebra,
            degrees,
            labels,
            action,
        })
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, b: usize) -> &Degree {
        &self.degrees[b]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    /// The same module over an algebra with identical structure constants.
    pub fn with_algebra(&self, algebra: Arc<GradedAlgebra>) -> Result<Self> {
        if !algebra.same_structure(&self.algebra) {
            return Err(Error::InvalidArgument("algebras differ in structure".into()));
        }
        Ok(GradedModule {
            algebra,
            ..self.clone()
        })
    }

    pub fn relabel(mut self, f: impl Fn(usize) -> String) -> Self {
        self.labels = (0..self.dim()).map(f).collect();
        self
    }

    pub fn act_basis(&self, u: usize, b: usize) -> &SparseVec {
        &self.action[u][b]
    }

    /// e_u · v
    pub fn act_on(&self, u: usize, v: &[(usize, crate::FieldElement)]) -> SparseVec {
        let k = self.algebra.field();
        let mut out = Vec::new();
        for (b, c) in v {
            out = axpy(k, &out, c, &self.action[u][*b]);
        }
        out
    }

    /// a · v for an algebra element a.
    pub fn act(&self, a: &AlgElem, v: &[(usize, crate::FieldElement)]) -> SparseVec {
        let k = self.algebra.field();
        let mut out = Vec::new();
        for (u, c) in a {
            out = axpy(k, &out, c, &self.act_on(*u, v));
        }
        out
    }

    /// The linear map of e_u, columns indexed by basis.
    pub fn action_matrix(&self, u: usize) -> Matrix {
        Matrix::from_sparse_cols(self.dim(), self.action[u].clone())
    }

    pub fn degree_blocks(&self) -> BTreeMap<Degree, Vec<usize>> {
        let mut out: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
        for (i, d) in self.degrees.iter().enumerate() {
            out.entry(d.clone()).or_default().push(i);
        }
        out
    }

    /// First `(u, v, b)` with (e_u e_v) m_b ≠ e_u (e_v m_b), if any.
    pub fn check_action_associativity(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let a = &self.algebra;
        for u in 0..a.dim() {
            for v in 0..a.dim() {
                for b in 0..self.dim() {
                    let lhs = self.act(a.basis_product(u, v), &[(b, a.field().one())]);
                    let rhs = self.act_on(u, &self.action[v][b]);
                    if lhs != rhs {
                        return Err((u, v, b));
                    }
                }
            }
        }
        Ok(())
    }

    /// Free module ⊕ Λ⟨s⟩; the generator of the summand Λ⟨s⟩ sits in degree s.
    /// Basis index g·dim Λ + u stands for e_u times generator g.
    pub fn free(algebra: Arc<GradedAlgebra>, shifts: &[Degree]) -> Result<Self> {
        let d = algebra.dim();
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        for (g, s) in shifts.iter().enumerate() {
            for u in 0..d {
                degrees.push(s + algebra.degree(u));
                labels.push(if shifts.len() == 1 {
                    algebra.label(u).to_string()
                } else {
                    format!("{}·g{}", algebra.label(u), g)
                });
            }
        }
        let action = (0..d)
            .map(|v| {
                (0..shifts.len())
                    .flat_map(|g| (0..d).map(move |u| (g, u)))
                    .map(|(g, u)| {
                        algebra
                            .basis_product(v, u)
                            .iter()
                            .map(|(w, c)| (g * d + w, c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedModule::new(algebra, degrees, labels, action)
    }

    pub fn regular(algebra: Arc<GradedAlgebra>) -> Self {
        let zero = Degree::zero(algebra.grading_rank());
        GradedModule::free(algebra, &[zero]).expect("regular module is valid")
    }

    /// The simple module k in degree 0 of a connected algebra.
    pub fn trivial(algebra: Arc<GradedAlgebra>) -> Result<Self> {
        if !algebra.is_connected() {
            return Err(Error::NotConnected);
        }
        let one = algebra.field().one();
        let action = (0..algebra.dim())
            .map(|u| {
                if u == algebra.unit_index() {
                    vec![vec![(0, one.clone())]]
                } else {
                    vec![Vec::new()]
                }
            })
            .collect();
        let zero = Degree::zero(algebra.grading_rank());
        GradedModule::new(algebra, vec![zero], vec!["k".into()], action)
    }

    /// Λ as a left module over Λ^e, where e_u ⊗ e_v^op acts by x ↦ e_u x e_v.
    pub fn algebra_as_bimodule(algebra: &GradedAlgebra, envelope: Arc<GradedAlgebra>) -> Result<Self> {
        let d = algebra.dim();
        if envelope.dim() != d * d {
            return Err(Error::DimensionMismatch("envelope has the wrong dimension".into()));
        }
        let k = algebra.field();
        let action = (0..d)
            .flat_map(|u| (0..d).map(move |v| (u, v)))
            .map(|(u, v)| {
                (0..d)
                    .map(|x| {
                        let ux = algebra.basis_product(u, x);
                        algebra.mul(ux, &vec![(v, k.one())])
                    })
                    .collect()
            })
            .collect();
        GradedModule::new(
            envelope,
            algebra.basis().iter().map(|b| b.degree.clone()).collect(),
            algebra.basis().iter().map(|b| b.label.clone()).collect(),
            action,
        )
    }

    /// M⟨a⟩: same action, every basis degree increased by a.
    pub fn shift(&self, a: &Degree) -> Result<Self> {
        if a.rank() != self.algebra.grading_rank() {
            return Err(Error::DimensionMismatch("shift degree has the wrong rank".into()));
        }
        Ok(GradedModule {
            degrees: self.degrees.iter().map(|d| d + a).collect(),
            ..self.clone()
        })
    }

    pub fn direct_sum(parts: &[GradedModule]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
        let algebra = first.algebra.clone();
        let mut degrees = Vec::new();
        let mut labels = Vec::new();
        let mut action = vec![Vec::new(); algebra.dim()];
        let mut offset = 0;
        for (i, p) in parts.iter().enumerate() {
            if p.algebra.dim() != algebra.dim() {
                return Err(Error::DimensionMismatch("summands over different algebras".into()));
            }
            degrees.extend(p.degrees.iter().cloned());
            labels.extend(p.labels.iter().map(|l| format!("{l}[{i}]")));
            for (u, row) in p.action.iter().enumerate() {
                action[u].extend(
                    row.iter()
                        .map(|img| img.iter().map(|(c, x)| (c + offset, x.clone())).collect()),
                );
            }
            offset += p.dim();
        }
        GradedModule::new(algebra, degrees, labels, action)
    }

    /// Quotient by the submodule generated by homogeneous components of `gens`,
    /// with the projection matrix.
    pub fn quotient(&self, gens: &[SparseVec]) -> Result<(GradedModule, Matrix)> {
        let k = self.algebra.field().clone();
        let mut ech = Echelon::new(k.clone(), self.dim(), false);
        let mut queue: Vec<SparseVec> = Vec::new();
        for g in gens {
            let mut parts: BTreeMap<&Degree, SparseVec> = BTreeMap::new();
            for (b, c) in g {
                parts.entry(&self.degrees[*b]).or_default().push((*b, c.clone()));
            }
            queue.extend(parts.into_values());
        }
        while let Some(v) = queue.pop() {
            let (r, _) = ech.reduce(v);
            if r.is_empty() {
                continue;
            }
            for u in 0..self.algebra.dim() {
                if u != self.algebra.unit_index() {
                    queue.push(self.act_on(u, &r));
                }
            }
            ech.insert(r);
        }
        let pivots: std::collections::BTreeSet<usize> = ech.pivot_columns().collect();
        let keep: Vec<usize> = (0..self.dim()).filter(|b| !pivots.contains(b)).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let project = |v: SparseVec| -> SparseVec {
            ech.reduce(v)
                .0
                .into_iter()
                .map(|(b, c)| (pos[&b], c))
                .collect()
        };
        let action = (0..self.algebra.dim())
            .map(|u| keep.iter().map(|&b| project(self.action[u][b].clone())).collect())
            .collect();
        let proj = Matrix::from_sparse_cols(
            keep.len(),
            (0..self.dim()).map(|b| project(vec![(b, k.one())])).collect(),
        );
        let q = GradedModule::new(
            self.algebra.clone(),
            keep.iter().map(|&b| self.degrees[b].clone()).collect(),
            keep.iter().map(|&b| self.labels[b].clone()).collect(),
            action,
        )?;
        Ok((q, proj))
    }

    /// Whether the matrix `f` (columns = images of basis of `self`) is a
    /// degree-preserving module map into `target`, up to the degree offset `a`
    /// (basis degree d maps into degree d − a).
    pub fn is_module_map(&self, target: &GradedModule, f: &Matrix, a: &Degree) -> bool {
        let k = self.algebra.field();
        if f.rows() != target.dim() || f.cols() != self.dim() {
            return false;
        }
        let cols = f.columns();
        for (b, img) in cols.iter().enumerate() {
            let want = &self.degrees[b] - a;
            if img.iter().any(|(c, _)| target.degrees[*c] != want) {
                return false;
            }
        }
        for u in 0..self.algebra.dim() {
            for b in 0..self.dim() {
                let lhs = f.mul_vec(k, &self.action[u][b]);
                let rhs = target.act_on(u, &cols[b]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

fn check_over(m: &GradedModule, alg: &GradedAlgebra, what: &str) -> Result<()> {
    if m.algebra.dim() != alg.dim() || m.algebra.grading_rank() != alg.grading_rank() {
        return Err(Error::DimensionMismatch(format!("{what} is not over the expected algebra")));
    }
    Ok(())
}

/// M ⊗ᵗ N over Λ ⊗ᵗ Γ with (λ⊗γ)(m⊗n) = t(|m|,|γ|) λm ⊗ γn; basis index m·dim N + n.
pub fn module_tensor(tp: &TwistedProduct, m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    check_over(m, &tp.left, "left factor")?;
    check_over(n, &tp.right, "right factor")?;
    let k = tp.algebra.field();
    let (dl, dr) = (tp.left.dim(), tp.right.dim());
    let (dm, dn) = (m.dim(), n.dim());
    let mut action = Vec::with_capacity(dl * dr);
    for u in 0..dl {
        for w in 0..dr {
            let mut row = Vec::with_capacity(dm * dn);
            for x in 0..dm {
                let s = tp.twist.eval(m.degree(x), tp.right.degree(w))?;
                for y in 0..dn {
                    row.push(outer(k, &s, m.act_basis(u, x), n.act_basis(w, y), dn));
                }
            }
            action.push(row);
        }
    }
    GradedModule::new(
        tp.algebra.clone(),
        (0..dm)
            .flat_map(|x| (0..dn).map(move |y| (x, y)))
            .map(|(x, y)| m.degree(x).concat(n.degree(y)))
            .collect(),
        (0..dm)
            .flat_map(|x| (0..dn).map(move |y| (x, y)))
            .map(|(x, y)| format!("{}⊗{}", m.label(x), n.label(y)))
            .collect(),
        action,
    )
}

/// X ⊗ᵗ Y over (Λ⊗ᵗΓ)^e, where (λ⊗γ)⊗(λ′⊗γ′)^op acts on x⊗y by
/// t(|x|,|γ|) t(|λ′|,|y|) t(|λ′|,|γ|) λxλ′ ⊗ γyγ′.
pub fn bimodule_tensor(tp: &TwistedProduct, x: &GradedModule, y: &GradedModule) -> Result<GradedModule> {
    let (le, re, ce) = (tp.left_envelope(), tp.right_envelope(), tp.envelope());
    check_over(x, &le, "left bimodule")?;
    check_over(y, &re, "right bimodule")?;
    let k = tp.algebra.field();
    let t = &tp.twist;
    let (dl, dr) = (tp.left.dim(), tp.right.dim());
    let dc = dl * dr;
    let (dx, dy) = (x.dim(), y.dim());
    let mut action = vec![Vec::new(); ce.dim()];
    for u in 0..dl {
        for w in 0..dr {
            for u2 in 0..dl {
                for w2 in 0..dr {
                    let idx = (u * dr + w) * dc + (u2 * dr + w2);
                    let lam2 = tp.left.degree(u2);
                    let gam = tp.right.degree(w);
                    let base = t.eval(lam2, gam)?;
                    let mut row = Vec::with_capacity(dx * dy);
                    for a in 0..dx {
                        let sx = k.mul(&base, &t.eval(x.degree(a), gam)?);
                        let xa = x.act_basis(u * dl + u2, a);
                        for b in 0..dy {
                            let s = k.mul(&sx, &t.eval(lam2, y.degree(b))?);
                            row.push(outer(k, &s, xa, y.act_basis(w * dr + w2, b), dy));
                        }
                    }
                    action[idx] = row;
                }
            }
        }
    }
    GradedModule::new(
        ce,
        (0..dx)
            .flat_map(|a| (0..dy).map(move |b| (a, b)))
            .map(|(a, b)| x.degree(a).concat(y.degree(b)))
            .collect(),
        (0..dx)
            .flat_map(|a| (0..dy).map(move |b| (a, b)))
            .map(|(a, b)| format!("{}⊗{}", x.label(a), y.label(b)))
            .collect(),
        action,
    )
}

/// s · (v ⊗ w) in the basis index i·stride + j.
pub(crate) fn outer(
    k: &crate::Field,
    s: &crate::FieldElement,
    v: &[(usize, crate::FieldElement)],
    w: &[(usize, crate::FieldElement)],
    stride: usize,
) -> SparseVec {
    let mut out = Vec::with_capacity(v.len() * w.len());
    for (i, a) in v {
        let sa = k.mul(s, a);
        for (j, b) in w {
            let c = k.mul(&sa, b);
            if !c.is_zero() {
                out.push((i * stride + j, c));
            }
        }
    }
    out
}

/// Scalar t(a,|n|)^{-1} of the shift isomorphism M⟨a⟩ ⊗ᵗ N⟨b⟩ → (M ⊗ᵗ N)⟨a,b⟩,
/// |n| taken in the unshifted N.
pub fn shift_isomorphism(tp: &TwistedProduct, m: &GradedModule, n: &GradedModule, a: &Degree) -> Result<Matrix> {
    let k = tp.algebra.field();
    let mut cols = Vec::with_capacity(m.dim() * n.dim());
    for x in 0..m.dim() {
        for y in 0..n.dim() {
            let s = k.inv(&tp.twist.eval(a, n.degree(y))?)?;
            cols.push(vec![(x * n.dim() + y, s)]);
        }
    }
    Ok(Matrix::from_sparse_cols(m.dim() * n.dim(), cols))
}

/// Identity-like matrix, handy for comparing module structures on the same basis.
pub fn identity_matrix(k: &crate::Field, n: usize) -> Matrix {
    Matrix::from_sparse_cols(n, (0..n).map(|i| vec![(i, k.one())]).collect())
}

/// Whether the homogeneous components of `vs` are linearly independent.
pub fn independent(k: &crate::Field, dim: usize, vs: &[SparseVec]) -> bool {
    let mut e = Echelon::new(k.clone(), dim, false);
    vs.iter().all(|v| matches!(e.insert(v.clone()), Insert::Pivot(_)))
}
