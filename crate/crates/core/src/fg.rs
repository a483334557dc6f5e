//! Finite generation, complexity and representation-dimension bounds for QCIs.

use serde::Serialize;

use crate::algebra::QciSpec;
use crate::error::{Error, Result};
use crate::field::Order;

pub const CLIQUE_GUARD: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FgReport {
    pub fg: bool,
    /// (i, j, order of q_ij), 1-based; order is None when infinite
    pub witnesses: Vec<(usize, usize, Option<u64>)>,
    pub rationale: String,
}

fn orders(spec: &QciSpec) -> Result<Vec<(usize, usize, Order)>> {
    let k = spec.field();
    let mut out = Vec::new();
    for i in 0..spec.n() {
        for j in i + 1..spec.n() {
            out.push((i, j, k.unit_order(spec.q(i, j))?));
        }
    }
    Ok(out)
}

pub fn fg_check(spec: &QciSpec) -> Result<FgReport> {
    let ord = orders(spec)?;
    let witnesses: Vec<_> = ord
        .iter()
        .map(|(i, j, o)| {
            let o = match o {
                Order::Finite(n) => Some(*n),
                Order::Infinite => None,
            };
            (i + 1, j + 1, o)
        })
        .collect();
    let bad: Vec<String> = witnesses
        .iter()
        .filter(|w| w.2.is_none())
        .map(|(i, j, _)| format!("q_{i}{j}"))
        .collect();
    let fg = bad.is_empty();
    let rationale = if fg {
        "every commutator q_ij is a root of unity".to_string()
    } else {
        format!("not a root of unity: {}", bad.join(", "))
    };
    Ok(FgReport {
        fg,
        witnesses,
        rationale,
    })
}

/// Largest I ⊆ {1..n} with q_ij of finite order for all i < j in I. Singletons always qualify.
pub fn clique_c(spec: &QciSpec) -> Result<usize> {
    let n = spec.n();
    if n > CLIQUE_GUARD {
        return Err(Error::GuardExceeded {
            what: "number of variables",
            value: n,
            limit: CLIQUE_GUARD,
        });
    }
    let mut adj = vec![0u32; n];
    for (i, j, o) in orders(spec)? {
        if o.is_finite() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let clique = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .all(|i| adj[i] & mask == mask & !(1 << i));
        if clique {
            best = size;
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepdimBounds {
    pub c: usize,
    pub h: usize,
    pub lower: usize,
    pub upper: usize,
    /// 2n, reported on its own as well
    pub coarse: usize,
    pub consistent: bool,
}

pub fn repdim_bounds(spec: &QciSpec) -> Result<RepdimBounds> {
    let n = spec.n();
    let c = clique_c(spec)?;
    let h = spec.exponents().iter().filter(|&&a| a == 2).count();
    let fine = if 2 * h <= n { 2 * n - h } else { 2 * n - h + 1 };
    let upper = fine.min(2 * n);
    Ok(RepdimBounds {
        c,
        h,
        lower: c + 1,
        upper,
        coarse: 2 * n,
        consistent: c + 1 <= upper,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityEstimate {
    pub value: usize,
    /// always true: a finite window cannot certify eventual growth
    pub estimate: bool,
    pub stride: usize,
}

/// Growth degree of a Betti sequence: the least d such that d-fold differences at some
/// stride s ≤ 4 vanish on the tail. Eventually zero gives 0, bounded gives 1, linear gives 2.
pub fn complexity_estimate(betti: &[usize]) -> Result<ComplexityEstimate> {
    if betti.len() < 6 {
        return Err(Error::SequenceTooShort {
            need: 6,
            got: betti.len(),
        });
    }
    let seq: Vec<i128> = betti.iter().map(|&b| b as i128).collect();
    // the last half of the differenced window must vanish
    let vanishes = |v: &[i128]| v.len() >= 2 && v[v.len() - (v.len() / 2).max(2)..].iter().all(|&x| x == 0);
    for d in 0..seq.len() {
        for s in 1..=4 {
            let mut v = seq.clone();
            for _ in 0..d {
                if v.len() <= s {
                    v.clear();
                    break;
                }
                v = (0..v.len() - s).map(|m| v[m + s] - v[m]).collect();
            }
            if vanishes(&v) {
                return Ok(ComplexityEstimate {
                    value: d,
                    estimate: true,
                    stride: s,
                });
            }
        }
    }
    Ok(ComplexityEstimate {
        value: seq.len(),
        estimate: true,
        stride: 1,
    })
}
