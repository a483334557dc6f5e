//! Graded Hom spaces, endomorphism algebras and tensor products of morphisms.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{twisted_tensor_algebra, BasisElement, GradedAlgebra, TwistedProduct};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::Degree;
use crate::linalg::{Echelon, Insert, Matrix, SparseVec};
use crate::module::{module_tensor, outer, GradedModule};

/// {a ↦ basis of grHom(M, N⟨a⟩)}; a map of degree a sends M_d into N_{d−a}.
/// Matrices have one column per basis vector of M.
#[derive(Clone, Debug)]
pub struct HomTable {
    pub pieces: BTreeMap<Degree, Vec<Matrix>>,
}

impl HomTable {
    pub fn dim(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    pub fn dims(&self) -> BTreeMap<Degree, usize> {
        self.pieces
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(d, v)| (d.clone(), v.len()))
            .collect()
    }
}

/// `f` followed by `g`: the matrix of g ∘ f.
pub fn compose(k: &Field, f: &Matrix, g: &Matrix) -> Result<Matrix> {
    g.mul(k, f)
}

/// grHom(M, N⟨a⟩) by solving "commutes with every basis element of the algebra".
pub fn hom_in_degree(m: &GradedModule, n: &GradedModule, a: &Degree) -> Result<Vec<Matrix>> {
    if m.algebra().dim() != n.algebra().dim() {
        return Err(Error::DimensionMismatch("modules over different algebras".into()));
    }
    let alg = m.algebra();
    let k = alg.field();
    let n_blocks = n.degree_blocks();
    // unknown (b, y): coefficient of n_y in φ(m_b)
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for b in 0..m.dim() {
        if let Some(ys) = n_blocks.get(&(m.degree(b) - a)) {
            for &y in ys {
                index.insert((b, y), unknowns.len());
                unknowns.push((b, y));
            }
        }
    }
    if unknowns.is_empty() {
        return Ok(Vec::new());
    }
    let targets: Vec<Vec<usize>> = (0..m.dim())
        .map(|b| {
            n_blocks
                .get(&(m.degree(b) - a))
                .cloned()
                .unwrap_or_default()
        })
        .collect();
    let mut rows: BTreeMap<(usize, usize, usize), SparseVec> = BTreeMap::new();
    for u in 0..alg.dim() {
        if u == alg.unit_index() {
            continue;
        }
        for b0 in 0..m.dim() {
            // φ(e_u m_b0)
            for (b1, c) in m.act_basis(u, b0) {
                for &y in &targets[*b1] {
                    rows.entry((u, b0, y))
                        .or_default()
                        .push((index[&(*b1, y)], c.clone()));
                }
            }
            // − e_u φ(m_b0)
            for &y in &targets[b0] {
                for (y2, c) in n.act_basis(u, y) {
                    rows.entry((u, b0, *y2))
                        .or_default()
                        .push((index[&(b0, y)], k.neg(c)));
                }
            }
        }
    }
    let rows: Vec<SparseVec> = rows.into_values().map(|r| normalize(k, r)).collect();
    let sys = Matrix::from_sparse_rows(unknowns.len(), rows);
    let kernel = sys.kernel_basis(k);
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut cols = vec![Vec::new(); m.dim()];
            for (j, c) in v {
                let (b, y) = unknowns[j];
                cols[b].push((y, c));
            }
            for col in cols.iter_mut() {
                col.sort_by_key(|(i, _)| *i);
            }
            Matrix::from_sparse_cols(n.dim(), cols)
        })
        .collect())
}

fn normalize(k: &Field, mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = k.add(acc, &c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Every degree a with M_d and N_{d−a} both nonzero for some d.
pub fn candidate_degrees(m: &GradedModule, n: &GradedModule) -> BTreeSet<Degree> {
    let md: BTreeSet<&Degree> = m.degrees().iter().collect();
    let nd: BTreeSet<&Degree> = n.degrees().iter().collect();
    md.iter()
        .flat_map(|x| nd.iter().map(move |y| *x - *y))
        .collect()
}

pub fn graded_hom(m: &GradedModule, n: &GradedModule) -> Result<HomTable> {
    let mut pieces = BTreeMap::new();
    for a in candidate_degrees(m, n) {
        let basis = hom_in_degree(m, n, &a)?;
        if !basis.is_empty() {
            pieces.insert(a, basis);
        }
    }
    Ok(HomTable { pieces })
}

fn flatten(m: &Matrix) -> SparseVec {
    let mut out: SparseVec = Vec::new();
    for (j, col) in m.columns().into_iter().enumerate() {
        out.extend(col.into_iter().map(|(i, c)| (j * m.rows() + i, c)));
    }
    out.sort_by_key(|(i, _)| *i);
    out
}

/// End(M) as a graded algebra acting on the right: x(φψ) = (xφ)ψ,
/// so the product φ·ψ is the matrix of ψ ∘ φ.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub algebra: GradedAlgebra,
    /// One matrix per basis element of `algebra`.
    pub maps: Vec<Matrix>,
    pub degrees: Vec<Degree>,
}

pub fn endomorphism_algebra(m: &GradedModule) -> Result<EndAlgebra> {
    let k = m.algebra().field().clone();
    let rank = m.algebra().grading_rank();
    let table = graded_hom(m, m)?;
    let zero = Degree::zero(rank);
    let id = crate::module::identity_matrix(&k, m.dim());
    let mut maps: Vec<Matrix> = Vec::new();
    let mut degrees: Vec<Degree> = Vec::new();
    // identity first so that it is the unit basis element
    let mut ordered: Vec<(Degree, Vec<Matrix>)> = table.pieces.into_iter().collect();
    ordered.sort_by_key(|(d, _)| (d != &zero, d.clone()));
    for (d, basis) in ordered {
        let mut ech = Echelon::new(k.clone(), m.dim() * m.dim(), false);
        let mut chosen = Vec::new();
        let seed = if d == zero { vec![id.clone()] } else { Vec::new() };
        for f in seed.into_iter().chain(basis) {
            if matches!(ech.insert(flatten(&f)), Insert::Pivot(_)) {
                chosen.push(f);
            }
        }
        for f in chosen {
            maps.push(f);
            degrees.push(d.clone());
        }
    }
    // per-degree tracking echelons for expressing products
    let mut by_degree: BTreeMap<Degree, (Echelon, Vec<usize>)> = BTreeMap::new();
    for (i, (f, d)) in maps.iter().zip(&degrees).enumerate() {
        let entry = by_degree
            .entry(d.clone())
            .or_insert_with(|| (Echelon::new(k.clone(), m.dim() * m.dim(), true), Vec::new()));
        entry.0.insert(flatten(f));
        entry.1.push(i);
    }
    let dim = maps.len();
    let mut products = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = compose(&k, &maps[i], &maps[j])?;
            if prod.is_zero() {
                continue;
            }
            let d = &degrees[i] + &degrees[j];
            let (ech, idx) = by_degree
                .get(&d)
                .ok_or_else(|| Error::LiftFailed("product left the endomorphism ring".into()))?;
            let combo = ech
                .express(&flatten(&prod))
                .ok_or_else(|| Error::LiftFailed("product not in span of endomorphisms".into()))?;
            let mut v: SparseVec = combo.into_iter().map(|(p, c)| (idx[p], c)).collect();
            v.sort_by_key(|(i, _)| *i);
            products[i * dim + j] = v;
        }
    }
    let basis = degrees
        .iter()
        .enumerate()
        .map(|(i, d)| BasisElement {
            label: if i == 0 { "id".into() } else { format!("f{i}") },
            degree: d.clone(),
        })
        .collect();
    let algebra = GradedAlgebra::new(k, rank, basis, 0, products)?;
    Ok(EndAlgebra {
        algebra,
        maps,
        degrees,
    })
}

/// φ ⊗ ψ on M ⊗ᵗ N for φ of degree a: (m⊗n)(φ⊗ψ) = t(a,|n|)^{-1} mφ ⊗ nψ.
pub fn tensor_morphism(
    tp: &TwistedProduct,
    m: &GradedModule,
    n: &GradedModule,
    phi: &Matrix,
    a: &Degree,
    psi: &Matrix,
) -> Result<Matrix> {
    let k = tp.algebra.field();
    let (pc, qc) = (phi.columns(), psi.columns());
    let rows = phi.rows() * psi.rows();
    let mut cols = Vec::with_capacity(m.dim() * n.dim());
    for x in 0..m.dim() {
        for y in 0..n.dim() {
            let s = k.inv(&tp.twist.eval(a, n.degree(y))?)?;
            cols.push(outer(k, &s, &pc[x], &qc[y], psi.rows()));
        }
    }
    Ok(Matrix::from_sparse_cols(rows, cols))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct EndoReport {
    pub dim_left: usize,
    pub dim_right: usize,
    pub dim_tensor: usize,
    /// every φ⊗ψ commutes with the action
    pub morphisms_ok: bool,
    /// structure constants of End(M)⊗ᵗEnd(N) match composition
    pub products_checked: usize,
    pub product_failures: usize,
}

impl EndoReport {
    pub fn passed(&self) -> bool {
        self.morphisms_ok && self.product_failures == 0 && self.dim_tensor == self.dim_left * self.dim_right
    }
}

/// Compare End(M) ⊗ᵗ End(N) with End(M ⊗ᵗ N) through (φ,ψ) ↦ φ⊗ψ.
pub fn twisted_endo_check(tp: &TwistedProduct, m: &GradedModule, n: &GradedModule) -> Result<EndoReport> {
    let k = tp.algebra.field().clone();
    let em = endomorphism_algebra(m)?;
    let en = endomorphism_algebra(n)?;
    let mn = module_tensor(tp, m, n)?;
    let tensor = twisted_tensor_algebra(&em.algebra, &en.algebra, &tp.twist)?;
    let dn = en.maps.len();
    let mut maps = Vec::with_capacity(em.maps.len() * dn);
    let mut morphisms_ok = true;
    for (f, a) in em.maps.iter().zip(&em.degrees) {
        for (g, b) in en.maps.iter().zip(&en.degrees) {
            let h = tensor_morphism(tp, m, n, f, a, g)?;
            morphisms_ok &= mn.is_module_map(&mn, &h, &a.concat(b));
            maps.push(h);
        }
    }
    let flat: Vec<SparseVec> = maps.iter().map(flatten).collect();
    morphisms_ok &= crate::module::independent(&k, mn.dim() * mn.dim(), &flat);
    let dim_tensor = graded_hom(&mn, &mn)?.dim();
    let mut checked = 0;
    let mut failures = 0;
    for i in 0..maps.len() {
        for j in 0..maps.len() {
            let lhs = flatten(&compose(&k, &maps[i], &maps[j])?);
            let mut rhs: SparseVec = Vec::new();
            for (w, c) in tensor.basis_product(i, j) {
                rhs = crate::linalg::axpy(&k, &rhs, c, &flat[*w]);
            }
            checked += 1;
            if lhs != rhs {
                failures += 1;
            }
        }
    }
    Ok(EndoReport {
        dim_left: em.maps.len(),
        dim_right: dn,
        dim_tensor,
        morphisms_ok,
        products_checked: checked,
        product_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use crate::algebra::{qci_construct, truncated_polynomial, QciSpec};
    use crate::{Twist, UnitDescriptor};

    fn dual(k: &Field) -> Arc<GradedAlgebra> {
        Arc::new(truncated_polynomial(k, 2).unwrap())
    }

    #[test]
    fn hom_from_trivial_to_trivial() {
        let k = Field::rationals();
        let kk = GradedModule::trivial(dual(&k)).unwrap();
        let h = graded_hom(&kk, &kk).unwrap();
        assert_eq!(h.dims(), BTreeMap::from([(Degree(vec![0]), 1)]));
    }

    #[test]
    fn end_of_regular_is_algebra_sized() {
        let k = Field::rationals();
        let a = Arc::new(
            qci_construct(&QciSpec::uniform(k.clone(), vec![2, 3], UnitDescriptor::minus_one()).unwrap())
                .unwrap(),
        );
        let r = GradedModule::regular(a.clone());
        assert_eq!(graded_hom(&r, &r).unwrap().dim(), a.dim());
        let e = endomorphism_algebra(&r).unwrap();
        assert!(e.algebra.check_associativity().is_ok());
        // End(Λ) acting on the right is Λ itself; for q = −1 it is again a QCI of dim 6
        assert_eq!(e.algebra.dim(), 6);
    }

    #[test]
    fn hom_is_multiplicative_on_tensors() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::var("q")]]).unwrap();
        let tp = TwistedProduct::new(dual(&k), dual(&k), t).unwrap();
        let mods = [
            GradedModule::trivial(tp.left.clone()).unwrap(),
            GradedModule::regular(tp.left.clone()),
        ];
        for m in &mods {
            for m2 in &mods {
                for n in &mods {
                    for n2 in &mods {
                        let lhs = graded_hom(
                            &module_tensor(&tp, m, n).unwrap(),
                            &module_tensor(&tp, m2, n2).unwrap(),
                        )
                        .unwrap()
                        .dim();
                        let rhs = graded_hom(m, m2).unwrap().dim() * graded_hom(n, n2).unwrap().dim();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_endo_regular() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::var("q")]]).unwrap();
        let tp = TwistedProduct::new(dual(&k), dual(&k), t).unwrap();
        let r = GradedModule::regular(tp.left.clone());
        let kk = GradedModule::trivial(tp.left.clone()).unwrap();
        let m = GradedModule::direct_sum(&[r, kk]).unwrap();
        let rep = twisted_endo_check(&tp, &m, &m).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}
