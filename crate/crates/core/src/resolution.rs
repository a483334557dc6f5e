//! Graded free resolutions: explicit periodic ones, a generic minimal one,
//! and exactness and minimality checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{enveloping, truncated_polynomial, AlgElem, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::Degree;
use crate::linalg::{Echelon, Insert, Matrix, SparseVec};
use crate::module::GradedModule;

/// ⊕_g Λ⟨s_g⟩; the linear basis index of e_u·g is g·dim Λ + u.
#[derive(Clone, Debug)]
pub struct FreeModule {
    algebra: Arc<GradedAlgebra>,
    shifts: Vec<Degree>,
    labels: Vec<String>,
}

impl FreeModule {
    pub fn new(algebra: Arc<GradedAlgebra>, shifts: Vec<Degree>, labels: Vec<String>) -> Self {
        assert_eq!(shifts.len(), labels.len());
        FreeModule {
            algebra,
            shifts,
            labels,
        }
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn dim(&self) -> usize {
        self.rank() * self.algebra.dim()
    }

    pub fn shifts(&self) -> &[Degree] {
        &self.shifts
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates of the generator g.
    pub fn generator(&self, g: usize) -> SparseVec {
        vec![(g * self.algebra.dim() + self.algebra.unit_index(), self.algebra.field().one())]
    }

    /// Σ_g a_g · generator g.
    pub fn element(&self, coeffs: &[(usize, AlgElem)]) -> SparseVec {
        let d = self.algebra.dim();
        let mut out: SparseVec = coeffs
            .iter()
            .flat_map(|(g, a)| a.iter().map(move |(u, c)| (g * d + u, c.clone())))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// Split a linear vector into its algebra coefficient per generator.
    pub fn coefficients(&self, v: &[(usize, crate::FieldElement)]) -> BTreeMap<usize, AlgElem> {
        let d = self.algebra.dim();
        let mut out: BTreeMap<usize, AlgElem> = BTreeMap::new();
        for (i, c) in v {
            out.entry(i / d).or_default().push((i % d, c.clone()));
        }
        out
    }

    pub fn module(&self) -> GradedModule {
        let mut m = GradedModule::free(self.algebra.clone(), &self.shifts).expect("free module is valid");
        if self.rank() > 1 {
            m = m.relabel(|b| {
                let (g, u) = (b / self.algebra.dim(), b % self.algebra.dim());
                format!("{}·{}", self.algebra.label(u), self.labels[g])
            });
        }
        m
    }

    pub fn basis_degree(&self, b: usize) -> Degree {
        let d = self.algebra.dim();
        &self.shifts[b / d] + self.algebra.degree(b % d)
    }
}

/// Linear matrix of the module map out of `src` sending generator g to `images[g]` in `target`.
pub fn free_map_matrix(src: &FreeModule, target: &GradedModule, images: &[SparseVec]) -> Matrix {
    let d = src.algebra.dim();
    let mut cols = Vec::with_capacity(src.dim());
    for img in images {
        for u in 0..d {
            cols.push(target.act_on(u, img));
        }
    }
    Matrix::from_sparse_cols(target.dim(), cols)
}

/// Apply the module map out of `src` with generator images `images` to a vector `v`.
pub fn apply_free_map(
    src: &FreeModule,
    target: &GradedModule,
    images: &[SparseVec],
    v: &[(usize, crate::FieldElement)],
) -> SparseVec {
    let k = src.algebra.field();
    let d = src.algebra.dim();
    let mut out = Vec::new();
    for (b, c) in v {
        let img = target.act_on(b % d, &images[b / d]);
        out = crate::linalg::axpy(k, &out, c, &img);
    }
    out
}

/// Rank of a degree-preserving map, block by block.
pub fn graded_rank(k: &Field, m: &Matrix, src_degrees: &[Degree]) -> usize {
    column_blocks(m, src_degrees)
        .into_values()
        .map(|cols| {
            let mut e = Echelon::new(k.clone(), m.rows(), false);
            cols.into_iter().filter(|c| matches!(e.insert(c.1.clone()), Insert::Pivot(_))).count()
        })
        .sum()
}

/// Kernel of a degree-preserving map, computed block by block; vectors in source coordinates.
pub fn graded_kernel(k: &Field, m: &Matrix, src_degrees: &[Degree]) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for cols in column_blocks(m, src_degrees).into_values() {
        let idx: Vec<usize> = cols.iter().map(|c| c.0).collect();
        let sub = Matrix::from_sparse_cols(m.rows(), cols.into_iter().map(|c| c.1).collect());
        for v in sub.kernel_basis(k) {
            let mut w: SparseVec = v.into_iter().map(|(j, c)| (idx[j], c)).collect();
            w.sort_by_key(|(i, _)| *i);
            out.push(w);
        }
    }
    out
}

fn column_blocks(m: &Matrix, src_degrees: &[Degree]) -> BTreeMap<Degree, Vec<(usize, SparseVec)>> {
    let mut blocks: BTreeMap<Degree, Vec<(usize, SparseVec)>> = BTreeMap::new();
    for (j, col) in m.columns().into_iter().enumerate() {
        blocks.entry(src_degrees[j].clone()).or_default().push((j, col));
    }
    blocks
}

/// A free resolution P_• → M, truncated after `terms.len()` terms.
#[derive(Clone, Debug)]
pub struct Resolution {
    target: GradedModule,
    terms: Vec<FreeModule>,
    /// maps[0]: images of generators of P_0 in M; maps[i]: images of generators of P_i in P_{i−1}
    maps: Vec<Vec<SparseVec>>,
    /// the last differential is injective, so all later terms vanish
    complete: bool,
}

impl Resolution {
    pub fn new(target: GradedModule, terms: Vec<FreeModule>, maps: Vec<Vec<SparseVec>>) -> Result<Self> {
        if terms.len() != maps.len() || terms.is_empty() {
            return Err(Error::DimensionMismatch("resolution needs one map per term".into()));
        }
        for (i, (p, m)) in terms.iter().zip(&maps).enumerate() {
            if p.rank() != m.len() {
                return Err(Error::DimensionMismatch(format!("map {i} has wrong number of images")));
            }
        }
        Ok(Resolution {
            target,
            terms,
            maps,
            complete: false,
        })
    }

    /// Rebase onto an algebra with identical structure constants (e.g. nicer labels).
    pub fn with_algebra(&self, algebra: Arc<GradedAlgebra>) -> Result<Self> {
        let target = self.target.with_algebra(algebra.clone())?;
        let terms = self
            .terms
            .iter()
            .map(|p| FreeModule::new(algebra.clone(), p.shifts.clone(), p.labels.clone()))
            .collect();
        Ok(Resolution {
            target,
            terms,
            maps: self.maps.clone(),
            complete: self.complete,
        })
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        self.target.algebra()
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    /// Highest homological degree present.
    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, i: usize) -> &FreeModule {
        &self.terms[i]
    }

    pub fn terms(&self) -> &[FreeModule] {
        &self.terms
    }

    /// Generator images of d_i (i ≥ 1) or of the augmentation (i = 0).
    pub fn map_images(&self, i: usize) -> &[SparseVec] {
        &self.maps[i]
    }

    pub fn betti(&self) -> Vec<usize> {
        self.terms.iter().map(FreeModule::rank).collect()
    }

    pub fn generator_degrees(&self, i: usize) -> &[Degree] {
        self.terms[i].shifts()
    }

    /// Linear matrix of d_i (or the augmentation for i = 0).
    pub fn map_matrix(&self, i: usize) -> Matrix {
        let target = if i == 0 { self.target.clone() } else { self.terms[i - 1].module() };
        free_map_matrix(&self.terms[i], &target, &self.maps[i])
    }

    fn source_degrees(&self, i: usize) -> Vec<Degree> {
        (0..self.terms[i].dim()).map(|b| self.terms[i].basis_degree(b)).collect()
    }

    /// Whether d_{i−1} ∘ d_i = 0 for all i ≥ 1 (d_0 = augmentation).
    pub fn check_d_squared(&self) -> bool {
        let k = self.algebra().field();
        (1..self.terms.len()).all(|i| {
            let prev = self.map_matrix(i - 1);
            self.maps[i].iter().all(|img| prev.mul_vec(k, img).is_empty())
        })
    }

    /// Augmentation onto M, d∘d = 0, and exactness at P_0..P_{n−1}.
    pub fn is_exact(&self) -> bool {
        if !self.check_d_squared() {
            return false;
        }
        let k = self.algebra().field();
        let ranks: Vec<usize> = (0..self.terms.len())
            .map(|i| graded_rank(k, &self.map_matrix(i), &self.source_degrees(i)))
            .collect();
        if ranks[0] != self.target.dim() {
            return false;
        }
        (0..self.terms.len() - 1).all(|i| ranks[i] + ranks[i + 1] == self.terms[i].dim())
    }

    /// Every differential (i ≥ 1) lands in rad·P for a connected algebra.
    pub fn is_minimal(&self) -> bool {
        let a = self.algebra();
        let d = a.dim();
        self.maps[1..]
            .iter()
            .flatten()
            .all(|img| img.iter().all(|(b, _)| b % d != a.unit_index()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let a = self.algebra();
        let degrees: Vec<serde_json::Value> = self
            .terms
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let target_labels: Vec<String> = if i == 0 {
                    Vec::new()
                } else {
                    self.terms[i - 1].labels().to_vec()
                };
                let differential: Vec<serde_json::Value> = if i == 0 {
                    Vec::new()
                } else {
                    self.maps[i]
                        .iter()
                        .map(|img| {
                            let coeffs = self.terms[i - 1].coefficients(img);
                            serde_json::Value::Object(
                                coeffs
                                    .iter()
                                    .map(|(g, c)| (target_labels[*g].clone(), a.format_element(c).into()))
                                    .collect(),
                            )
                        })
                        .collect()
                };
                serde_json::json!({
                    "homological_degree": i,
                    "rank": p.rank(),
                    "generators": p.labels().iter().zip(p.shifts()).map(|(l, s)| {
                        serde_json::json!({"label": l, "degree": s.0})
                    }).collect::<Vec<_>>(),
                    "differential": differential,
                })
            })
            .collect();
        serde_json::json!({ "betti": self.betti(), "terms": degrees })
    }
}

/// Shifts 0, 1, a, a+1, 2a, … making the alternating differentials homogeneous.
pub fn periodic_shift(a: usize, i: usize) -> i64 {
    ((i / 2) * a + i % 2) as i64
}

/// Resolution of k over k[x]/(x^a) with differentials alternating x and x^{a−1}.
pub fn periodic_module_resolution(field: &Field, a: usize, trunc: usize) -> Result<Resolution> {
    if a < 2 {
        return Err(Error::InvalidArgument(format!("exponent {a} < 2")));
    }
    periodic_module_resolution_over(Arc::new(truncated_polynomial(field, a)?), trunc)
}

pub fn periodic_module_resolution_over(alg: Arc<GradedAlgebra>, trunc: usize) -> Result<Resolution> {
    let a = alg
        .truncated_polynomial_exponent()
        .ok_or_else(|| Error::InvalidArgument("not a truncated polynomial algebra".into()))?;
    let k = alg.field().clone();
    let d = alg.dim();
    let target = GradedModule::trivial(alg.clone())?;
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for i in 0..=trunc {
        terms.push(FreeModule::new(
            alg.clone(),
            vec![Degree(vec![periodic_shift(a, i)])],
            vec![format!("e{i}")],
        ));
        let img = match i {
            0 => vec![(0, k.one())],
            _ if i % 2 == 1 => vec![(1, k.one())],
            _ => vec![(a - 1, k.one())],
        };
        debug_assert!(img[0].0 < d);
        maps.push(vec![img]);
    }
    Resolution::new(target, terms, maps)
}

/// Resolution of Γ = k[x]/(x^a) over Γ^e with differentials alternating
/// u ↦ xu − ux and u ↦ Σ x^i u x^{a−1−i}.
pub fn periodic_bimodule_resolution(field: &Field, a: usize, trunc: usize) -> Result<Resolution> {
    if a < 2 {
        return Err(Error::InvalidArgument(format!("exponent {a} < 2")));
    }
    let alg = truncated_polynomial(field, a)?;
    let env = Arc::new(enveloping(&alg));
    periodic_bimodule_resolution_over(&alg, env, trunc)
}

pub fn periodic_bimodule_resolution_over(
    alg: &GradedAlgebra,
    env: Arc<GradedAlgebra>,
    trunc: usize,
) -> Result<Resolution> {
    let a = alg
        .truncated_polynomial_exponent()
        .ok_or_else(|| Error::InvalidArgument("not a truncated polynomial algebra".into()))?;
    let k = alg.field().clone();
    let target = GradedModule::algebra_as_bimodule(alg, env.clone())?;
    // e_u ⊗ e_v^op has index u·a + v
    let odd = vec![(1, k.int(-1)), (a, k.one())];
    let even: SparseVec = {
        let mut v: SparseVec = (0..a).map(|i| (i * a + (a - 1 - i), k.one())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let mut terms = Vec::new();
    let mut maps = Vec::new();
    for i in 0..=trunc {
        terms.push(FreeModule::new(
            env.clone(),
            vec![Degree(vec![periodic_shift(a, i)])],
            vec![format!("e{i}")],
        ));
        let img = match i {
            0 => vec![(0, k.one())],
            _ if i % 2 == 1 => odd.clone(),
            _ => even.clone(),
        };
        maps.push(vec![img]);
    }
    Resolution::new(target, terms, maps)
}

/// Free resolution whose generators at each step span a complement of
/// radical·K in K, where the radical is spanned by `radical`.
pub fn resolve_with_radical(
    alg: Arc<GradedAlgebra>,
    radical: &[AlgElem],
    m: &GradedModule,
    trunc: usize,
) -> Result<Resolution> {
    let k = alg.field().clone();
    let mut terms: Vec<FreeModule> = Vec::new();
    let mut maps: Vec<Vec<SparseVec>> = Vec::new();
    // current kernel: a GradedModule `ambient` and a spanning set of vectors
    let mut ambient = m.clone();
    let mut kernel: Vec<SparseVec> = identity_vectors(&k, m.dim());
    let mut complete = false;
    for i in 0..=trunc {
        let gens = top_generators(&k, &ambient, radical, &kernel);
        let shifts: Vec<Degree> = gens.iter().map(|v| ambient.degree(v[0].0).clone()).collect();
        let labels = (0..gens.len()).map(|g| format!("g{i}_{g}")).collect();
        let p = FreeModule::new(alg.clone(), shifts, labels);
        let mat = free_map_matrix(&p, &ambient, &gens);
        let src_deg: Vec<Degree> = (0..p.dim()).map(|b| p.basis_degree(b)).collect();
        kernel = graded_kernel(&k, &mat, &src_deg);
        ambient = p.module();
        terms.push(p);
        maps.push(gens);
        if kernel.is_empty() {
            complete = true;
            break;
        }
    }
    let mut r = Resolution::new(m.clone(), terms, maps)?;
    r.complete = complete;
    Ok(r)
}

fn identity_vectors(k: &Field, n: usize) -> Vec<SparseVec> {
    (0..n).map(|i| vec![(i, k.one())]).collect()
}

/// Homogeneous vectors of K completing radical·K to K, degree by degree.
pub(crate) fn top_generators(k: &Field, ambient: &GradedModule, radical: &[AlgElem], kernel: &[SparseVec]) -> Vec<SparseVec> {
    let deg = |v: &SparseVec| ambient.degree(v[0].0).clone();
    let mut by_degree: BTreeMap<Degree, (Vec<SparseVec>, Vec<SparseVec>)> = BTreeMap::new();
    for v in kernel.iter().filter(|v| !v.is_empty()) {
        by_degree.entry(deg(v)).or_default().0.push(v.clone());
        for r in radical {
            let rv = ambient.act(r, v);
            if !rv.is_empty() {
                by_degree.entry(deg(&rv)).or_default().1.push(rv);
            }
        }
    }
    let mut out = Vec::new();
    for (_, (vs, rad)) in by_degree {
        let mut e = Echelon::new(k.clone(), ambient.dim(), false);
        for r in rad {
            e.insert(r);
        }
        for v in vs {
            if matches!(e.insert(v.clone()), Insert::Pivot(_)) {
                out.push(v);
            }
        }
    }
    out
}

/// Minimal graded free resolution over a connected graded algebra.
pub fn minimal_resolution(alg: Arc<GradedAlgebra>, m: &GradedModule, trunc: usize) -> Result<Resolution> {
    if !alg.is_connected() {
        return Err(Error::NotConnected);
    }
    let k = alg.field().clone();
    let radical: Vec<AlgElem> = (0..alg.dim())
        .filter(|&u| u != alg.unit_index())
        .map(|u| vec![(u, k.one())])
        .collect();
    resolve_with_radical(alg, &radical, m, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{qci_construct, QciSpec};
    use crate::UnitDescriptor;

    #[test]
    fn periodic_shifts() {
        let k = Field::rationals();
        let r = periodic_module_resolution(&k, 3, 4).unwrap();
        let s: Vec<i64> = (0..=4).map(|i| r.generator_degrees(i)[0].0[0]).collect();
        assert_eq!(s, vec![0, 1, 3, 4, 6]);
        assert_eq!(r.betti(), vec![1; 5]);
    }

    #[test]
    fn periodic_resolutions_exact() {
        let k = Field::rationals();
        for a in 2..=5 {
            assert!(periodic_module_resolution(&k, a, 6).unwrap().is_exact(), "a={a}");
        }
        for a in 2..=4 {
            assert!(periodic_bimodule_resolution(&k, a, 6).unwrap().is_exact(), "a={a}");
        }
        let p = Field::prime(3).unwrap();
        assert!(periodic_bimodule_resolution(&p, 3, 5).unwrap().is_exact());
    }

    #[test]
    fn broken_differential_is_not_exact() {
        let k = Field::rationals();
        let r = periodic_module_resolution(&k, 3, 4).unwrap();
        let mut maps = r.maps.clone();
        maps[2] = vec![Vec::new()];
        let broken = Resolution::new(r.target.clone(), r.terms.clone(), maps).unwrap();
        assert!(!broken.is_exact());
    }

    #[test]
    fn minimal_matches_periodic() {
        let k = Field::rationals();
        let alg = Arc::new(truncated_polynomial(&k, 3).unwrap());
        let kk = GradedModule::trivial(alg.clone()).unwrap();
        let r = minimal_resolution(alg, &kk, 5).unwrap();
        assert_eq!(r.betti(), vec![1; 6]);
        assert!(r.is_exact() && r.is_minimal());
        let s: Vec<i64> = (0..=5).map(|i| r.generator_degrees(i)[0].0[0]).collect();
        assert_eq!(s, (0..=5).map(|i| periodic_shift(3, i)).collect::<Vec<_>>());
    }

    #[test]
    fn projective_has_length_zero() {
        let k = Field::rationals();
        let alg = Arc::new(truncated_polynomial(&k, 3).unwrap());
        let r = minimal_resolution(alg.clone(), &GradedModule::regular(alg), 5).unwrap();
        assert_eq!(r.betti(), vec![1]);
    }

    #[test]
    fn quantum_exterior_betti() {
        let k = Field::rationals();
        let spec = QciSpec::uniform(k, vec![2, 2, 2], UnitDescriptor::minus_one()).unwrap();
        let alg = Arc::new(qci_construct(&spec).unwrap());
        let kk = GradedModule::trivial(alg.clone()).unwrap();
        let r = minimal_resolution(alg, &kk, 4).unwrap();
        assert_eq!(r.betti(), vec![1, 3, 6, 10, 15]);
        assert!(r.is_exact());
    }
}
