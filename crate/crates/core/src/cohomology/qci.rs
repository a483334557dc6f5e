//! Resolutions and the Ext-algebra presentation for quantum complete intersections.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{qci_construct, truncated_polynomial, QciSpec, TwistedProduct};
use crate::cohomology::ext::{CohomologyClass, ExtEngine};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::grading::Degree;
use crate::linalg::{Echelon, Insert, SparseVec};
use crate::module::GradedModule;
use crate::resolution::{minimal_resolution, periodic_module_resolution_over, Resolution};
use crate::total::{twisted_total_resolution, TensorKind};

/// Resolution of k over the QCI as an iterated twisted total complex of the
/// periodic resolutions of the factors k[x_i]/(x_i^{a_i}).
pub fn qci_total_resolution(spec: &QciSpec, trunc: usize) -> Result<Resolution> {
    let k = spec.field().clone();
    let first = Arc::new(truncated_polynomial(&k, spec.exponents()[0])?);
    let mut res = periodic_module_resolution_over(first, trunc)?;
    for m in 1..spec.n() {
        let right = Arc::new(truncated_polynomial(&k, spec.exponents()[m])?);
        let twist = spec.truncate(m + 1).last_variable_twist()?;
        let tp = TwistedProduct::new(res.algebra().clone(), right.clone(), twist)?;
        let q = periodic_module_resolution_over(right, trunc)?;
        res = twisted_total_resolution(&tp, &res, &q, TensorKind::Module, trunc)?;
    }
    res.with_algebra(Arc::new(qci_construct(spec)?))
}

/// Minimal resolution of k computed directly over the QCI.
pub fn qci_minimal_resolution(spec: &QciSpec, trunc: usize) -> Result<Resolution> {
    let alg = Arc::new(qci_construct(spec)?);
    let kk = GradedModule::trivial(alg.clone())?;
    minimal_resolution(alg, &kk, trunc)
}

fn unit(n: usize, i: usize, scale: i64) -> Degree {
    let mut d = Degree::zero(n);
    d.0[i] = scale;
    d
}

/// The class dual to the unique generator of P_i in internal degree `a`.
fn dual_generator(e: &ExtEngine, i: usize, a: &Degree) -> Result<CohomologyClass> {
    let p = e.resolution().term(i);
    let g = p
        .shifts()
        .iter()
        .position(|s| s == a)
        .ok_or_else(|| Error::LiftFailed(format!("no generator of degree {a} in P_{i}")))?;
    let k = e.resolution().algebra().field();
    let mut cocycle = vec![Vec::new(); p.rank()];
    cocycle[g] = vec![(0, k.one())];
    Ok(CohomologyClass {
        degree: i,
        internal: a.clone(),
        cocycle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub i: usize,
    pub j: usize,
    pub holds: bool,
    /// the scalar c with lhs = c·rhs when both sides are nonzero and proportional
    pub observed: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanCheck {
    pub degree: usize,
    pub monomials: usize,
    pub rank: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtringReport {
    /// the relation families exactly as printed
    pub printed: Vec<RelationCheck>,
    /// the same families with exponents q^{a_i}, q^{a_j}, q^{a_i a_j}
    pub corrected: Vec<RelationCheck>,
    /// "z_j y_i = q_ij^2 z_i y_j" read character for character; its sides differ in degree
    pub literal: Vec<RelationCheck>,
    pub spanning: Vec<SpanCheck>,
}

impl ExtringReport {
    pub fn printed_pass(&self) -> bool {
        self.printed.iter().all(|r| r.holds)
    }

    pub fn corrected_pass(&self) -> bool {
        self.corrected.iter().all(|r| r.holds)
    }

    pub fn spanning_pass(&self) -> bool {
        self.spanning.iter().all(|s| s.rank == s.dim)
    }

    pub fn passed(&self) -> bool {
        self.printed_pass() && self.spanning_pass()
    }
}

/// Generators y_i, z_i of Ext*(k, k) with cached lifts.
struct Generators<'a> {
    engine: &'a ExtEngine,
    y: Vec<CohomologyClass>,
    z: Vec<CohomologyClass>,
    y_lift: Vec<Vec<Vec<SparseVec>>>,
    z_lift: Vec<Vec<Vec<SparseVec>>>,
}

#[derive(Clone, Copy)]
enum Gen {
    Y(usize),
    Z(usize),
}

impl<'a> Generators<'a> {
    fn new(engine: &'a ExtEngine, spec: &QciSpec, depth: usize) -> Result<Self> {
        let n = spec.n();
        let mut g = Generators {
            engine,
            y: Vec::new(),
            z: Vec::new(),
            y_lift: Vec::new(),
            z_lift: Vec::new(),
        };
        for i in 0..n {
            let y = dual_generator(engine, 1, &unit(n, i, 1))?;
            let z = dual_generator(engine, 2, &unit(n, i, spec.exponents()[i] as i64))?;
            g.y_lift.push(engine.lift(&y, depth.saturating_sub(1))?);
            g.z_lift.push(engine.lift(&z, depth.saturating_sub(2))?);
            g.y.push(y);
            g.z.push(z);
        }
        Ok(g)
    }

    fn class(&self, x: Gen) -> &CohomologyClass {
        match x {
            Gen::Y(i) => &self.y[i],
            Gen::Z(i) => &self.z[i],
        }
    }

    fn lift(&self, x: Gen) -> &[Vec<SparseVec>] {
        match x {
            Gen::Y(i) => &self.y_lift[i],
            Gen::Z(i) => &self.z_lift[i],
        }
    }

    /// Product of generators, associated from the right so only generator lifts are needed.
    fn monomial(&self, word: &[Gen]) -> Result<CohomologyClass> {
        let Some((last, rest)) = word.split_last() else {
            return self.engine.identity_class();
        };
        let mut acc = self.class(*last).clone();
        for x in rest.iter().rev() {
            acc = self.engine.yoneda_with_lift(self.class(*x), &acc, self.lift(*x))?;
        }
        Ok(acc)
    }

    /// The scalar c with lhs = c·rhs, if rhs is nonzero and lhs is a multiple of it.
    fn ratio(&self, lhs: &[Gen], rhs: &[Gen]) -> Result<Option<FieldElement>> {
        let k = self.engine.resolution().algebra().field();
        let (l, r) = (self.monomial(lhs)?, self.monomial(rhs)?);
        if l.internal != r.internal {
            return Ok(None);
        }
        let (lc, rc) = (self.engine.coordinates(&l)?, self.engine.coordinates(&r)?);
        let Some(p) = rc.iter().position(|x| !x.is_zero()) else {
            return Ok(None);
        };
        let c = k.div(&lc[p], &rc[p])?;
        let prop = lc.iter().zip(&rc).all(|(a, b)| k.sub(a, &k.mul(&c, b)).is_zero());
        Ok(prop.then_some(c))
    }

    /// lhs = c · rhs as classes (both sides may be zero words).
    fn relation(&self, lhs: &[Gen], c: &FieldElement, rhs: Option<&[Gen]>) -> Result<bool> {
        let k = self.engine.resolution().algebra().field();
        let l = self.monomial(lhs)?;
        match rhs {
            None => self.engine.is_zero_class(&l),
            Some(r) => {
                let r = self.monomial(r)?;
                if l.internal != r.internal {
                    return Ok(self.engine.is_zero_class(&l)? && (c.is_zero() || self.engine.is_zero_class(&r)?));
                }
                let diff = self.engine.combine(&[(k.one(), &l), (k.neg(c), &r)])?;
                self.engine.is_zero_class(&diff)
            }
        }
    }
}

/// Check the relation families of the Ext-algebra presentation of a QCI and
/// that monomials in y, z span Ext*(k, k) through degree `trunc`.
pub fn extring_presentation_check(spec: &QciSpec, trunc: usize) -> Result<ExtringReport> {
    if trunc < 4 {
        return Err(Error::InvalidArgument("ext-ring check needs trunc ≥ 4".into()));
    }
    let k = spec.field().clone();
    let res = qci_total_resolution(spec, trunc + 1)?;
    let kk = res.target().clone();
    let engine = ExtEngine::new(res, kk)?;
    let gens = Generators::new(&engine, spec, trunc)?;
    let n = spec.n();
    let q = |i: usize, j: usize| k.unit_eval(spec.q(i, j));
    let mut printed = Vec::new();
    let mut corrected = Vec::new();
    let mut literal = Vec::new();
    let record = |list: &mut Vec<RelationCheck>, relation: &str, i: usize, j: usize, holds: bool| {
        list.push(RelationCheck {
            relation: relation.into(),
            i: i + 1,
            j: j + 1,
            holds,
            observed: None,
        })
    };
    let observe = |list: &mut Vec<RelationCheck>, c: Option<FieldElement>| {
        if let Some(last) = list.last_mut() {
            last.observed = c.map(|c| k.format(&c));
        }
    };
    use Gen::{Y, Z};
    for i in 0..n {
        let h = gens.relation(&[Y(i), Z(i)], &k.one(), Some(&[Z(i), Y(i)]))?;
        record(&mut printed, "y_i z_i = z_i y_i", i, i, h);
        record(&mut corrected, "y_i z_i = z_i y_i", i, i, h);
        let h = if spec.exponents()[i] == 2 {
            let h = gens.relation(&[Y(i), Y(i)], &k.one(), Some(&[Z(i)]))?;
            record(&mut printed, "y_i^2 = z_i", i, i, h);
            h
        } else {
            let h = gens.relation(&[Y(i), Y(i)], &k.zero(), None)?;
            record(&mut printed, "y_i^2 = 0", i, i, h);
            h
        };
        let name = if spec.exponents()[i] == 2 { "y_i^2 = z_i" } else { "y_i^2 = 0" };
        record(&mut corrected, name, i, i, h);
    }
    for i in 0..n {
        for j in i + 1..n {
            let qij = q(i, j)?;
            let (ai, aj) = (spec.exponents()[i] as i64, spec.exponents()[j] as i64);
            let h = gens.relation(&[Y(j), Y(i)], &k.neg(&qij), Some(&[Y(i), Y(j)]))?;
            record(&mut printed, "y_j y_i = -q_ij y_i y_j", i, j, h);
            record(&mut corrected, "y_j y_i = -q_ij y_i y_j", i, j, h);
            let c = gens.ratio(&[Y(j), Y(i)], &[Y(i), Y(j)])?;
            observe(&mut printed, c.clone());
            observe(&mut corrected, c);
            let families: [(&str, &str, [Gen; 2], [Gen; 2], i64, i64); 3] = [
                ("y_j z_i = q_ij^2 z_i y_j", "y_j z_i = q_ij^(a_i) z_i y_j", [Y(j), Z(i)], [Z(i), Y(j)], 2, ai),
                ("z_j y_i = q_ij^2 y_i z_j", "z_j y_i = q_ij^(a_j) y_i z_j", [Z(j), Y(i)], [Y(i), Z(j)], 2, aj),
                ("z_j z_i = q_ij^4 z_i z_j", "z_j z_i = q_ij^(a_i a_j) z_i z_j", [Z(j), Z(i)], [Z(i), Z(j)], 4, ai * aj),
            ];
            let h = gens.relation(&[Z(j), Y(i)], &k.pow(&qij, 2)?, Some(&[Z(i), Y(j)]))?;
            record(&mut literal, "z_j y_i = q_ij^2 z_i y_j", i, j, h);
            for (pname, cname, lhs, rhs, pe, ce) in families {
                let h = gens.relation(&lhs, &k.pow(&qij, pe)?, Some(&rhs))?;
                record(&mut printed, pname, i, j, h);
                let h = gens.relation(&lhs, &k.pow(&qij, ce)?, Some(&rhs))?;
                record(&mut corrected, cname, i, j, h);
                let c = gens.ratio(&lhs, &rhs)?;
                observe(&mut printed, c.clone());
                observe(&mut corrected, c);
            }
        }
    }
    let spanning = spanning_check(&engine, &gens, n, trunc)?;
    Ok(ExtringReport {
        printed,
        corrected,
        literal,
        spanning,
    })
}

/// Normal-ordered words y^ε z^κ (ε_i ∈ {0,1}) of each total degree.
fn normal_words(n: usize, degree: usize) -> Vec<Vec<Gen>> {
    let mut out = Vec::new();
    for mask in 0..(1usize << n) {
        let ones = mask.count_ones() as usize;
        if ones > degree || (degree - ones) % 2 == 1 {
            continue;
        }
        let zs = (degree - ones) / 2;
        for kappa in compositions(zs, n) {
            let mut w: Vec<Gen> = (0..n).filter(|i| mask >> i & 1 == 1).map(Gen::Y).collect();
            for (i, &c) in kappa.iter().enumerate() {
                w.extend(std::iter::repeat(Gen::Z(i)).take(c));
            }
            out.push(w);
        }
    }
    out
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn spanning_check(engine: &ExtEngine, gens: &Generators, n: usize, trunc: usize) -> Result<Vec<SpanCheck>> {
    let k = engine.resolution().algebra().field().clone();
    let table = engine.table(trunc)?;
    let mut out = Vec::new();
    for m in 0..=trunc {
        let words = normal_words(n, m);
        let mut by_cell: BTreeMap<Degree, Echelon> = BTreeMap::new();
        let mut rank = 0;
        for w in &words {
            let c = gens.monomial(w)?;
            let coords = engine.coordinates(&c)?;
            let v: SparseVec = coords
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
            let e = by_cell
                .entry(c.internal.clone())
                .or_insert_with(|| Echelon::new(k.clone(), usize::MAX, false));
            if matches!(e.insert(v), Insert::Pivot(_)) {
                rank += 1;
            }
        }
        out.push(SpanCheck {
            degree: m,
            monomials: words.len(),
            rank,
            dim: table.total(m),
        });
    }
    Ok(out)
}
