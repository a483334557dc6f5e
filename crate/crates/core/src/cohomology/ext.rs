//! Ext groups from a free resolution, with Yoneda products via chain-map lifts.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::grading::Degree;
use crate::linalg::{axpy, ColumnSolver, Echelon, Insert, SparseVec};
use crate::module::GradedModule;
use crate::resolution::{apply_free_map, free_map_matrix, Resolution};

/// Images of the generators of P_i in the coefficient module.
pub type Cochain = Vec<SparseVec>;

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub internal: Degree,
    pub cocycle: Cochain,
}

/// Ext^{i,a} for one (i, a): cocycles, coboundaries and chosen class representatives.
#[derive(Debug)]
pub struct ExtCell {
    pub degree: usize,
    pub internal: Degree,
    /// flat cochain coordinates g·dim N + n allowed in this cell
    pub positions: Vec<usize>,
    pub cocycles: Vec<SparseVec>,
    pub coboundaries: Vec<SparseVec>,
    pub representatives: Vec<SparseVec>,
    /// coboundaries first, then representatives; tracks combinations
    basis: Echelon,
    n_coboundaries: usize,
}

impl ExtCell {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    /// (i, a) ↦ dim Ext^{i,a}, zero cells omitted
    pub dims: BTreeMap<(usize, Degree), usize>,
    pub trunc: usize,
}

impl ExtTable {
    pub fn dim(&self, i: usize, a: &Degree) -> usize {
        self.dims.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.dims.iter().filter(|((j, _), _)| *j == i).map(|(_, d)| d).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.trunc).map(|i| self.total(i)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.dims
                .iter()
                .map(|((i, a), d)| serde_json::json!({"degree": i, "internal_degree": a.0, "dim": d}))
                .collect(),
        )
    }
}

/// Ext^*(M, N) from a resolution P → M.
pub struct ExtEngine {
    res: Resolution,
    coeff: GradedModule,
    modules: Vec<GradedModule>,
    cells: RefCell<HashMap<(usize, Degree), Rc<ExtCell>>>,
    solvers: RefCell<HashMap<(usize, Degree), Rc<(ColumnSolver, Vec<usize>)>>>,
}

impl ExtEngine {
    pub fn new(res: Resolution, coeff: GradedModule) -> Result<Self> {
        if res.algebra().dim() != coeff.algebra().dim() {
            return Err(Error::DimensionMismatch("coefficients over a different algebra".into()));
        }
        let modules = res.terms().iter().map(|p| p.module()).collect();
        Ok(ExtEngine {
            res,
            coeff,
            modules,
            cells: RefCell::new(HashMap::new()),
            solvers: RefCell::new(HashMap::new()),
        })
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    pub fn coefficients(&self) -> &GradedModule {
        &self.coeff
    }

    fn field(&self) -> &Field {
        self.res.algebra().field()
    }

    /// Degrees i that have a following term (or end the resolution), so cocycles are decidable.
    pub fn max_degree(&self) -> usize {
        self.res.length().saturating_sub(1)
    }

    fn dim_n(&self) -> usize {
        self.coeff.dim()
    }

    /// Flat coordinates of the cochain space C^{i,a}.
    fn positions(&self, i: usize, a: &Degree) -> Vec<usize> {
        if i > self.res.length() {
            return Vec::new();
        }
        let blocks = self.coeff.degree_blocks();
        let p = self.res.term(i);
        let mut out = Vec::new();
        for (g, s) in p.shifts().iter().enumerate() {
            if let Some(ns) = blocks.get(&(s - a)) {
                out.extend(ns.iter().map(|n| g * self.dim_n() + n));
            }
        }
        out
    }

    fn unflatten(&self, i: usize, v: &[(usize, FieldElement)]) -> Cochain {
        let mut out = vec![Vec::new(); self.res.term(i).rank()];
        for (x, c) in v {
            out[x / self.dim_n()].push((x % self.dim_n(), c.clone()));
        }
        out
    }

    fn flatten(&self, f: &Cochain) -> SparseVec {
        let mut out: SparseVec = f
            .iter()
            .enumerate()
            .flat_map(|(g, img)| img.iter().map(move |(n, c)| (g * self.dim_n() + n, c.clone())))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// f extended to a module map P_i → N, applied to v.
    pub fn evaluate(&self, i: usize, f: &Cochain, v: &[(usize, FieldElement)]) -> SparseVec {
        apply_free_map(self.res.term(i), &self.coeff, f, v)
    }

    /// δf = f ∘ d_{i+1}, or `None` when P_{i+1} is not available.
    pub fn coboundary(&self, i: usize, f: &Cochain) -> Option<Cochain> {
        if i + 1 > self.res.length() {
            return None;
        }
        Some(
            self.res
                .map_images(i + 1)
                .iter()
                .map(|img| self.evaluate(i, f, img))
                .collect(),
        )
    }

    /// Whether higher terms are known to vanish (the resolution terminated).
    fn terminated(&self) -> bool {
        self.res.is_complete()
    }

    pub fn cell(&self, i: usize, a: &Degree) -> Result<Rc<ExtCell>> {
        if let Some(c) = self.cells.borrow().get(&(i, a.clone())) {
            return Ok(c.clone());
        }
        let k = self.field().clone();
        let positions = self.positions(i, a);
        let cocycles: Vec<SparseVec> = if i + 1 > self.res.length() {
            if !self.terminated() {
                return Err(Error::GuardExceeded {
                    what: "homological degree beyond resolution",
                    value: i,
                    limit: self.max_degree(),
                });
            }
            positions.iter().map(|&p| vec![(p, k.one())]).collect()
        } else {
            let cols: Vec<SparseVec> = positions
                .iter()
                .map(|&p| {
                    let f = self.unflatten(i, &[(p, k.one())]);
                    self.flatten(&self.coboundary(i, &f).expect("next term present"))
                })
                .collect();
            let rows = self.res.term(i + 1).rank() * self.dim_n();
            let solver = ColumnSolver::from_columns(&k, rows, cols);
            solver
                .kernel()
                .iter()
                .map(|v| {
                    let mut w: SparseVec = v.iter().map(|(j, c)| (positions[*j], c.clone())).collect();
                    w.sort_by_key(|(i, _)| *i);
                    w
                })
                .collect()
        };
        let coboundaries: Vec<SparseVec> = if i == 0 {
            Vec::new()
        } else {
            self.positions(i - 1, a)
                .iter()
                .map(|&p| {
                    let f = self.unflatten(i - 1, &[(p, k.one())]);
                    self.flatten(&self.coboundary(i - 1, &f).expect("term present"))
                })
                .filter(|v| !v.is_empty())
                .collect()
        };
        let width = self.res.term(i).rank() * self.dim_n();
        // select independent coboundaries, then a complement inside the cocycles
        let mut selector = Echelon::new(k.clone(), width, false);
        let kept_coboundaries: Vec<SparseVec> = coboundaries
            .into_iter()
            .filter(|b| matches!(selector.insert(b.clone()), Insert::Pivot(_)))
            .collect();
        let representatives: Vec<SparseVec> = cocycles
            .iter()
            .filter(|z| matches!(selector.insert((*z).clone()), Insert::Pivot(_)))
            .cloned()
            .collect();
        let n_coboundaries = kept_coboundaries.len();
        let mut basis = Echelon::new(k.clone(), width, true);
        for v in kept_coboundaries.iter().chain(&representatives) {
            basis.insert(v.clone());
        }
        let cell = Rc::new(ExtCell {
            degree: i,
            internal: a.clone(),
            positions,
            cocycles,
            coboundaries: kept_coboundaries,
            representatives,
            basis,
            n_coboundaries,
        });
        self.cells.borrow_mut().insert((i, a.clone()), cell.clone());
        Ok(cell)
    }

    /// Internal degrees a with a nonzero cochain space in degree i.
    pub fn candidate_internal_degrees(&self, i: usize) -> BTreeSet<Degree> {
        if i > self.res.length() {
            return BTreeSet::new();
        }
        let nd: BTreeSet<&Degree> = self.coeff.degrees().iter().collect();
        self.res
            .term(i)
            .shifts()
            .iter()
            .flat_map(|s| nd.iter().map(move |n| s - *n))
            .collect()
    }

    pub fn table(&self, trunc: usize) -> Result<ExtTable> {
        let mut dims = BTreeMap::new();
        for i in 0..=trunc {
            for a in self.candidate_internal_degrees(i) {
                let d = self.cell(i, &a)?.dim();
                if d > 0 {
                    dims.insert((i, a), d);
                }
            }
        }
        Ok(ExtTable { dims, trunc })
    }

    pub fn class_basis(&self, i: usize, a: &Degree) -> Result<Vec<CohomologyClass>> {
        let cell = self.cell(i, a)?;
        Ok(cell
            .representatives
            .iter()
            .map(|r| CohomologyClass {
                degree: i,
                internal: a.clone(),
                cocycle: self.unflatten(i, r),
            })
            .collect())
    }

    /// Coordinates of a class in the representative basis; error if not a cocycle.
    pub fn coordinates(&self, c: &CohomologyClass) -> Result<Vec<FieldElement>> {
        let k = self.field();
        let cell = self.cell(c.degree, &c.internal)?;
        let flat = self.flatten(&c.cocycle);
        let combo = cell
            .basis
            .express(&flat)
            .ok_or_else(|| Error::LiftFailed("cochain is not a cocycle of this cell".into()))?;
        let mut out = vec![k.zero(); cell.dim()];
        for (j, x) in combo {
            if j >= cell.n_coboundaries {
                out[j - cell.n_coboundaries] = x;
            }
        }
        Ok(out)
    }

    pub fn is_zero_class(&self, c: &CohomologyClass) -> Result<bool> {
        Ok(self.coordinates(c)?.iter().all(FieldElement::is_zero))
    }

    pub fn is_cocycle(&self, c: &CohomologyClass) -> bool {
        match self.coboundary(c.degree, &c.cocycle) {
            Some(d) => d.iter().all(Vec::is_empty),
            None => true,
        }
    }

    pub fn combine(&self, terms: &[(FieldElement, &CohomologyClass)]) -> Result<CohomologyClass> {
        let k = self.field();
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty combination".into()))?
            .1;
        let mut flat: SparseVec = Vec::new();
        for (c, x) in terms {
            if x.degree != first.degree || x.internal != first.internal {
                return Err(Error::InvalidArgument("combining classes of different degrees".into()));
            }
            flat = axpy(k, &flat, c, &self.flatten(&x.cocycle));
        }
        Ok(CohomologyClass {
            degree: first.degree,
            internal: first.internal.clone(),
            cocycle: self.unflatten(first.degree, &flat),
        })
    }

    pub fn equal_classes(&self, x: &CohomologyClass, y: &CohomologyClass) -> Result<bool> {
        if x.degree != y.degree || x.internal != y.internal {
            return Ok(false);
        }
        let k = self.field();
        let diff = self.combine(&[(k.one(), x), (k.int(-1), y)])?;
        self.is_zero_class(&diff)
    }

    /// Solve d_k x = y (k ≥ 1) or ε x = y (k = 0) within the degree of y.
    fn solve(&self, k_deg: usize, y: &SparseVec) -> Result<SparseVec> {
        if y.is_empty() {
            return Ok(Vec::new());
        }
        let target = if k_deg == 0 { self.res.target() } else { &self.modules[k_deg - 1] };
        let target_deg = target.degree(y[0].0).clone();
        let key = (k_deg, target_deg.clone());
        let cached = self.solvers.borrow().get(&key).cloned();
        let entry = match cached {
            Some(e) => e,
            None => {
                let p = self.res.term(k_deg);
                let m = free_map_matrix(p, target, self.res.map_images(k_deg));
                let cols = m.columns();
                let idx: Vec<usize> = (0..p.dim()).filter(|&b| p.basis_degree(b) == target_deg).collect();
                let chosen = idx.iter().map(|&b| cols[b].clone()).collect();
                let solver = ColumnSolver::from_columns(self.field(), m.rows(), chosen);
                let e = Rc::new((solver, idx));
                self.solvers.borrow_mut().insert(key, e.clone());
                e
            }
        };
        let x = entry
            .0
            .solve(y)
            .ok_or_else(|| Error::LiftFailed(format!("no preimage in degree {k_deg}")))?;
        let mut out: SparseVec = x.into_iter().map(|(j, c)| (entry.1[j], c)).collect();
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    /// Chain map G_k: P_{j+k} → P_k lifting the cocycle of η (coefficients must be M itself).
    pub fn lift(&self, eta: &CohomologyClass, depth: usize) -> Result<Vec<Vec<SparseVec>>> {
        let j = eta.degree;
        if j + depth > self.res.length() {
            return Err(Error::GuardExceeded {
                what: "lift depth beyond resolution",
                value: (j + depth),
                limit: self.res.length(),
            });
        }
        let mut maps: Vec<Vec<SparseVec>> = Vec::with_capacity(depth + 1);
        let g0 = eta
            .cocycle
            .iter()
            .map(|y| self.solve(0, y))
            .collect::<Result<Vec<_>>>()?;
        maps.push(g0);
        for k in 1..=depth {
            let prev = &maps[k - 1];
            let src = self.res.term(j + k - 1);
            let gk = self
                .res
                .map_images(j + k)
                .iter()
                .map(|d| {
                    let y = apply_free_map(src, &self.modules[k - 1], prev, d);
                    self.solve(k, &y)
                })
                .collect::<Result<Vec<_>>>()?;
            maps.push(gk);
        }
        Ok(maps)
    }

    /// ξ·η = η ∘ G_j(ξ) with j = deg η. Maps act on the right, so ξ is applied first.
    pub fn yoneda_product(&self, xi: &CohomologyClass, eta: &CohomologyClass) -> Result<CohomologyClass> {
        if self.coeff.dim() != self.res.target().dim() {
            return Err(Error::InvalidArgument("products need Ext(M, M)".into()));
        }
        let lift = self.lift(xi, eta.degree)?;
        self.yoneda_with_lift(xi, eta, &lift)
    }

    /// ξ·η given a precomputed lift of ξ of depth at least deg η.
    pub fn yoneda_with_lift(
        &self,
        xi: &CohomologyClass,
        eta: &CohomologyClass,
        xi_lift: &[Vec<SparseVec>],
    ) -> Result<CohomologyClass> {
        let j = eta.degree;
        let gj = xi_lift
            .get(j)
            .ok_or_else(|| Error::InvalidArgument("lift is too short".into()))?;
        let cocycle = gj.iter().map(|v| self.evaluate(j, &eta.cocycle, v)).collect();
        Ok(CohomologyClass {
            degree: j + xi.degree,
            internal: &xi.internal + &eta.internal,
            cocycle,
        })
    }

    /// The class of the identity in Ext^0(M, M).
    pub fn identity_class(&self) -> Result<CohomologyClass> {
        let zero = Degree::zero(self.res.algebra().grading_rank());
        let cocycle = self.res.map_images(0).to_vec();
        let c = CohomologyClass {
            degree: 0,
            internal: zero,
            cocycle,
        };
        if !self.is_cocycle(&c) {
            return Err(Error::LiftFailed("augmentation is not a cocycle".into()));
        }
        Ok(c)
    }
}
