//! Integer lattices: Hermite normal form, integer kernels and indices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Row-style Hermite normal form: echelon rows with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let best = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = a[r].clone();
            for i in 0..r {
                let q = a[i][c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * p;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Basis of {x ∈ ℤⁿ : M x = 0} for an integer matrix given by rows.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let p = rows.len();
    let aug: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut v: Vec<BigInt> = rows.iter().map(|r| r[j].clone()).collect();
            v.extend((0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    hermite_normal_form(&aug)
        .into_iter()
        .filter(|r| r[..p].iter().all(|x| x.is_zero()))
        .map(|r| r[p..].to_vec())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// A sublattice of ℤ^m, stored as its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Sublattice {
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Self {
        Sublattice {
            ambient,
            basis: hermite_normal_form(gens),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let gens: Vec<Vec<BigInt>> = (0..ambient)
            .map(|i| (0..ambient).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        Sublattice::from_generators(ambient, &gens)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let mut rest: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for row in &self.basis {
            let c = row.iter().position(|x| !x.is_zero()).unwrap();
            if rest[..c].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = rest[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        rest.iter().all(|x| x.is_zero())
    }

    /// [ℤ^m : L]; infinite when L has smaller rank.
    pub fn index(&self) -> LatticeIndex {
        if self.rank() < self.ambient {
            return LatticeIndex::Infinite;
        }
        let mut det = BigInt::one();
        for (i, row) in self.basis.iter().enumerate() {
            det *= &row[i];
        }
        LatticeIndex::Finite(det.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hermite_normal_form(&[bi(&[2, 4]), bi(&[0, 6])]);
        let b = hermite_normal_form(&[bi(&[2, 10]), bi(&[2, 4]), bi(&[4, 2])]);
        assert_eq!(a, vec![bi(&[2, 4]), bi(&[0, 6])]);
        assert_eq!(a, b);
    }

    #[test]
    fn index_examples() {
        let l = Sublattice::from_generators(1, &[bi(&[2])]);
        assert_eq!(l.index(), LatticeIndex::Finite(BigInt::from(2)));
        assert_eq!(Sublattice::full(3).index(), LatticeIndex::Finite(BigInt::one()));
        assert_eq!(Sublattice::from_generators(1, &[]).index(), LatticeIndex::Infinite);
    }

    #[test]
    fn integer_kernel_small() {
        // x + 2y + 3z = 0
        let k = integer_kernel(&[bi(&[1, 2, 3])], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v[0].clone() + &v[1] * 2 + &v[2] * 3;
            assert!(s.is_zero());
        }
        let l = Sublattice::from_generators(3, &k);
        assert!(l.contains(&[-2, 1, 0]));
        assert!(l.contains(&[-3, 0, 1]));
        assert!(!l.contains(&[1, 0, 0]));
    }
}
