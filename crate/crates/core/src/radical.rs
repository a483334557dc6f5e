//! Jacobson radical, primitive idempotents, projective covers and global dimension
//! of finite-dimensional algebras.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{AlgElem, GradedAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::grading::Degree;
use crate::linalg::{axpy, scale, sparsify, Echelon, Insert, Matrix, SparseVec};
use crate::module::GradedModule;

/// Jacobson radical. Connected graded algebras use the positive-degree part; otherwise the
/// kernel of the trace form (x, y) ↦ tr(L_{xy}), which is the radical in characteristic 0.
pub fn radical(alg: &GradedAlgebra) -> Result<Vec<AlgElem>> {
    let k = alg.field();
    let d = alg.dim();
    if alg.is_connected() {
        return Ok((0..d)
            .filter(|&b| !alg.degree(b).is_zero())
            .map(|b| vec![(b, k.one())])
            .collect());
    }
    if k.characteristic() != 0 {
        return Err(Error::RadicalUnsupported(k.characteristic()));
    }
    // tr L_{e_w} = Σ_u coefficient of e_u in e_w e_u
    let tr: Vec<_> = (0..d)
        .map(|w| {
            (0..d).fold(k.zero(), |acc, u| {
                let c = alg.basis_product(w, u).iter().find(|(i, _)| *i == u).map(|(_, c)| c.clone());
                c.map_or(acc.clone(), |c| k.add(&acc, &c))
            })
        })
        .collect();
    let rows = (0..d)
        .map(|x| {
            let row: Vec<_> = (0..d)
                .map(|y| {
                    alg.basis_product(x, y)
                        .iter()
                        .fold(k.zero(), |acc, (w, c)| k.add(&acc, &k.mul(c, &tr[*w])))
                })
                .collect();
            sparsify(&row)
        })
        .collect();
    Ok(Matrix::from_sparse_rows(d, rows).kernel_basis(k))
}

/// Σ c_i z^i with z^0 = e.
fn eval_at(alg: &GradedAlgebra, coeffs: &[FieldElement], z: &AlgElem, e: &AlgElem) -> AlgElem {
    let k = alg.field();
    let mut acc: AlgElem = Vec::new();
    for c in coeffs.iter().rev() {
        acc = alg.mul(&acc, z);
        acc = axpy(k, &acc, c, e);
    }
    acc
}

/// Coefficients of the least monic-up-to-scalar relation Σ c_i z^i ∈ J, z^0 = e.
fn min_poly_mod_radical(alg: &GradedAlgebra, rad: &[AlgElem], e: &AlgElem, z: &AlgElem) -> Vec<FieldElement> {
    let k = alg.field();
    let mut ech = Echelon::new(k.clone(), alg.dim(), true);
    // relations index every inserted vector, pivots or not
    for r in rad {
        ech.insert(r.clone());
    }
    let start = rad.len();
    let mut power = e.clone();
    for degree in 0.. {
        match ech.insert(power.clone()) {
            Insert::Pivot(_) => power = alg.mul(&power, z),
            Insert::Dependent(rel) => {
                let mut c = vec![k.zero(); degree + 1];
                for (i, v) in rel {
                    if i >= start {
                        c[i - start] = v;
                    }
                }
                return c;
            }
        }
    }
    unreachable!()
}

fn to_rational(x: &FieldElement) -> Option<BigRational> {
    match x {
        FieldElement::Rational(r) => Some(r.clone()),
        FieldElement::Fraction(f) if f.numerator().is_constant() && f.denominator().is_constant() => Some(
            BigRational::new(f.numerator().constant_term(), f.denominator().constant_term()),
        ),
        _ => None,
    }
}

fn divisors(n: &BigInt) -> Result<Vec<i64>> {
    let n = n.abs().to_u64().filter(|&n| n <= 1 << 40).ok_or_else(|| {
        Error::InvalidArgument("coefficients too large for rational root search".into())
    })?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as i64);
            out.push((n / d) as i64);
        }
        d += 1;
    }
    Ok(out)
}

/// Roots in k of Σ c_i x^i: brute force in characteristic p, rational roots in characteristic 0.
fn roots(k: &Field, c: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let eval = |x: &FieldElement| c.iter().rev().fold(k.zero(), |acc, ci| k.add(&k.mul(&acc, x), ci));
    let p = k.characteristic();
    if p > 0 {
        if p > 100_000 {
            return Err(Error::InvalidArgument("prime too large for root enumeration".into()));
        }
        return Ok((0..p as i64).map(|i| k.int(i)).filter(|x| eval(x).is_zero()).collect());
    }
    let q: Vec<BigRational> = c
        .iter()
        .map(to_rational)
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidArgument("minimal polynomial has non-constant coefficients".into()))?;
    let lcm = q.iter().fold(BigInt::one(), |l, r| num_integer::lcm(l, r.denom().clone()));
    let ints: Vec<BigInt> = q.iter().map(|r| (r * BigRational::from(lcm.clone())).to_integer()).collect();
    let mut out = Vec::new();
    let low = ints.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if low > 0 {
        out.push(k.zero());
    }
    let high = ints.iter().rposition(|x| !x.is_zero()).unwrap_or(0);
    if high > low {
        for a in divisors(&ints[low])? {
            for b in divisors(&ints[high])? {
                for s in [1, -1] {
                    let x = k.ratio(s * a, b)?;
                    if eval(&x).is_zero() && !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Divide out every factor (x − λ).
fn strip_root(k: &Field, c: &[FieldElement], lambda: &FieldElement) -> Vec<FieldElement> {
    let mut c = c.to_vec();
    loop {
        let rem = c.iter().rev().fold(k.zero(), |acc, ci| k.add(&k.mul(&acc, lambda), ci));
        if !rem.is_zero() || c.len() <= 1 {
            return c;
        }
        // synthetic division
        let n = c.len() - 1;
        let mut q = vec![k.zero(); n];
        let mut carry = k.zero();
        for i in (0..n).rev() {
            carry = k.add(&c[i + 1], &k.mul(&carry, lambda));
            q[i] = carry.clone();
        }
        c = q;
    }
}

/// Lift an idempotent modulo a nilpotent ideal: f ← 3f² − 2f³ until f² = f.
fn lift_idempotent(alg: &GradedAlgebra, mut f: AlgElem) -> Result<AlgElem> {
    let k = alg.field();
    for _ in 0..64 {
        let f2 = alg.mul(&f, &f);
        if f2 == f {
            return Ok(f);
        }
        let f3 = alg.mul(&f2, &f);
        f = axpy(k, &scale(k, &k.int(3), &f2), &k.int(-2), &f3);
    }
    Err(Error::InvalidArgument("idempotent lifting did not converge".into()))
}

/// Try to split e using the eigenvalues of z ∈ eAe modulo the radical.
fn split_with(alg: &GradedAlgebra, rad: &[AlgElem], e: &AlgElem, z: &AlgElem) -> Result<Option<AlgElem>> {
    let k = alg.field();
    let mu = min_poly_mod_radical(alg, rad, e, z);
    let rs = roots(k, &mu)?;
    if rs.len() < 2 {
        return Ok(None);
    }
    let g = strip_root(k, &mu, &rs[0]);
    let g_at = g.iter().rev().fold(k.zero(), |acc, ci| k.add(&k.mul(&acc, &rs[0]), ci));
    let f0 = scale(k, &k.inv(&g_at)?, &eval_at(alg, &g, z, e));
    lift_idempotent(alg, f0).map(Some)
}

/// Complete set of primitive orthogonal idempotents, assuming A/J is split basic.
pub fn primitive_idempotents(alg: &GradedAlgebra, rad: &[AlgElem]) -> Result<Vec<AlgElem>> {
    let k = alg.field();
    let mut queue = vec![alg.one()];
    let mut out = Vec::new();
    while let Some(e) = queue.pop() {
        let mut base = Echelon::new(k.clone(), alg.dim(), false);
        for r in rad {
            base.insert(r.clone());
        }
        base.insert(e.clone());
        let mut split = None;
        for b in 0..alg.dim() {
            let z = alg.mul(&alg.mul(&e, &vec![(b, k.one())]), &e);
            if base.contains(&z) {
                continue;
            }
            if let Some(f) = split_with(alg, rad, &e, &z)? {
                split = Some(f);
                break;
            }
        }
        match split {
            Some(f) => {
                let rest = axpy(k, &e, &k.int(-1), &f);
                queue.push(f);
                queue.push(rest);
            }
            None => out.push(e),
        }
    }
    Ok(out)
}

/// The module A·e with basis chosen among the b·e.
fn principal_projective(alg: &Arc<GradedAlgebra>, e: &AlgElem, tag: usize) -> Result<(GradedModule, Vec<AlgElem>)> {
    let k = alg.field();
    let mut ech = Echelon::new(k.clone(), alg.dim(), true);
    let mut basis = Vec::new();
    // insertion index -> basis position; only pivots are ever inserted
    for b in 0..alg.dim() {
        let w = alg.mul(&vec![(b, k.one())], e);
        if !w.is_empty() && !ech.contains(&w) {
            ech.insert(w.clone());
            basis.push(w);
        }
    }
    let action = (0..alg.dim())
        .map(|u| {
            basis
                .iter()
                .map(|w| {
                    let mut v = ech.express(&alg.mul(&vec![(u, k.one())], w)).expect("A·e is a left ideal");
                    v.sort_by_key(|(i, _)| *i);
                    v
                })
                .collect()
        })
        .collect();
    let degrees = vec![Degree::zero(alg.grading_rank()); basis.len()];
    let labels = (0..basis.len()).map(|j| format!("P{tag}_{j}")).collect();
    Ok((GradedModule::new(alg.clone(), degrees, labels, action)?, basis))
}

/// pd_A M from projective covers ⊕ A e_i. `None` if no syzygy up to `trunc` is zero.
/// The algebra must be ungraded (grading rank 0).
pub fn projective_dimension(
    alg: &Arc<GradedAlgebra>,
    rad: &[AlgElem],
    idempotents: &[AlgElem],
    m: &GradedModule,
    trunc: usize,
) -> Result<Option<usize>> {
    let k = alg.field().clone();
    let projectives = idempotents
        .iter()
        .enumerate()
        .map(|(i, e)| principal_projective(alg, e, i))
        .collect::<Result<Vec<_>>>()?;
    let mut ambient = m.clone();
    let mut kernel: Vec<SparseVec> = (0..m.dim()).map(|i| vec![(i, k.one())]).collect();
    for n in 0..=trunc {
        let mut top = Echelon::new(k.clone(), ambient.dim(), false);
        for v in &kernel {
            for r in rad {
                let w = ambient.act(r, v);
                if !w.is_empty() {
                    top.insert(w);
                }
            }
        }
        let mut gens: Vec<(usize, SparseVec)> = Vec::new();
        for (i, e) in idempotents.iter().enumerate() {
            for v in &kernel {
                let w = ambient.act(e, v);
                if !w.is_empty() && matches!(top.insert(w.clone()), Insert::Pivot(_)) {
                    gens.push((i, w));
                }
            }
        }
        let mut cols = Vec::new();
        let mut parts = Vec::new();
        for (i, v) in &gens {
            let (module, basis) = &projectives[*i];
            cols.extend(basis.iter().map(|w| ambient.act(w, v)));
            parts.push(module.clone());
        }
        let pi = Matrix::from_sparse_cols(ambient.dim(), cols);
        kernel = pi.kernel_basis(&k);
        if kernel.is_empty() {
            return Ok(Some(n));
        }
        ambient = GradedModule::direct_sum(&parts)?;
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GlobalDimension {
    Exact(usize),
    /// A/rad A has no projective syzygy within the window
    AtLeast(usize),
}

/// gldim A = pd_A(A/rad A), computed on the ungraded algebra.
pub fn gldim(alg: &GradedAlgebra, trunc: usize) -> Result<GlobalDimension> {
    let a = Arc::new(alg.ungraded());
    let rad = radical(&a)?;
    let idem = primitive_idempotents(&a, &rad)?;
    let (top, _) = GradedModule::regular(a.clone()).quotient(&rad)?;
    Ok(match projective_dimension(&a, &rad, &idem, &top, trunc)? {
        Some(n) => GlobalDimension::Exact(n),
        None => GlobalDimension::AtLeast(trunc + 1),
    })
}
