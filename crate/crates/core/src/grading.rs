//! Degrees in ℤ^m and twist bicharacters t: ℤ^m ⊗ ℤ^n → k^×.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, UnitDescriptor};
use crate::lattice::{integer_kernel, Sublattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn zero(rank: usize) -> Self {
        Degree(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut d = Degree::zero(rank);
        d.0[i] = 1;
        d
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Componentwise nonnegative and not zero.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && !self.is_zero()
    }

    pub fn concat(&self, other: &Degree) -> Degree {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Degree(v)
    }

    pub fn split(&self, at: usize) -> (Degree, Degree) {
        (Degree(self.0[..at].to_vec()), Degree(self.0[at..].to_vec()))
    }

    pub fn scaled(&self, c: i64) -> Degree {
        Degree(self.0.iter().map(|x| x * c).collect())
    }
}

impl Add for &Degree {
    type Output = Degree;
    fn add(self, rhs: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), rhs.rank());
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Degree {
    type Output = Degree;
    fn sub(self, rhs: &Degree) -> Degree {
        debug_assert_eq!(self.rank(), rhs.rank());
        Degree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum TwistEntry {
    Unit(UnitDescriptor),
    Value(FieldElement),
}

/// A bicharacter given on standard generators: t(a, b) = ∏ T[i][j]^{a_i b_j}.
#[derive(Clone, Debug, PartialEq)]
pub struct Twist {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<TwistEntry>,
    values: Vec<FieldElement>,
    inverses: Vec<FieldElement>,
}

/// Side of a twist for kernel computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Twist {
    fn build(field: &Field, rows: usize, cols: usize, entries: Vec<TwistEntry>) -> Result<Self> {
        let mut values = Vec::with_capacity(entries.len());
        for e in &entries {
            let v = match e {
                TwistEntry::Unit(u) => field.unit_eval(u)?,
                TwistEntry::Value(v) => v.clone(),
            };
            if v.is_zero() {
                return Err(Error::NotAUnit);
            }
            values.push(v);
        }
        let inverses = values
            .iter()
            .map(|v| field.inv(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Twist {
            field: field.clone(),
            rows,
            cols,
            entries,
            values,
            inverses,
        })
    }

    pub fn from_units(field: &Field, matrix: Vec<Vec<UnitDescriptor>>) -> Result<Self> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.len());
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged twist matrix".into()));
        }
        let entries = matrix.into_iter().flatten().map(TwistEntry::Unit).collect();
        Twist::build(field, rows, cols, entries)
    }

    pub fn from_values(field: &Field, matrix: Vec<Vec<FieldElement>>) -> Result<Self> {
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.len());
        if matrix.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged twist matrix".into()));
        }
        let entries = matrix.into_iter().flatten().map(TwistEntry::Value).collect();
        Twist::build(field, rows, cols, entries)
    }

    pub fn trivial(field: &Field, rows: usize, cols: usize) -> Self {
        Twist::from_units(field, vec![vec![UnitDescriptor::one(); cols]; rows]).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entry(&self, i: usize, j: usize) -> &TwistEntry {
        &self.entries[i * self.cols + j]
    }

    pub fn unit(&self, i: usize, j: usize) -> Option<&UnitDescriptor> {
        match self.entry(i, j) {
            TwistEntry::Unit(u) => Some(u),
            TwistEntry::Value(_) => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| self.field.is_one(v))
    }

    /// t(a, b).
    pub fn eval(&self, a: &Degree, b: &Degree) -> Result<FieldElement> {
        if a.rank() != self.rows || b.rank() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "twist of shape {}x{} applied to degrees of rank {} and {}",
                self.rows,
                self.cols,
                a.rank(),
                b.rank()
            )));
        }
        let k = &self.field;
        let mut acc = k.one();
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                let e = ai * bj;
                if e == 0 {
                    continue;
                }
                let idx = i * self.cols + j;
                if k.is_one(&self.values[idx]) {
                    continue;
                }
                let base = if e > 0 { &self.values[idx] } else { &self.inverses[idx] };
                acc = k.mul(&acc, &k.pow(base, e.abs())?);
            }
        }
        Ok(acc)
    }

    /// The sign-augmented twist on (ℤ ⊕ ℤ^m) ⊗ (ℤ ⊕ ℤ^n), homological degree first:
    /// ((i,a),(j,b)) ↦ (−1)^{ij} t(a,b).
    pub fn tilde(&self) -> Twist {
        let mut entries = Vec::with_capacity((self.rows + 1) * (self.cols + 1));
        for i in 0..=self.rows {
            for j in 0..=self.cols {
                entries.push(match (i, j) {
                    (0, 0) => TwistEntry::Unit(UnitDescriptor::minus_one()),
                    (0, _) | (_, 0) => TwistEntry::Unit(UnitDescriptor::one()),
                    _ => self.entry(i - 1, j - 1).clone(),
                });
            }
        }
        Twist::build(&self.field, self.rows + 1, self.cols + 1, entries)
            .expect("entries of a valid twist stay valid")
    }

    pub fn transpose(&self) -> Twist {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        Twist::build(&self.field, self.cols, self.rows, entries).unwrap()
    }

    /// A′ = {a : t(a, b) = 1 ∀b} (left) or B′ = {b : t(a, b) = 1 ∀a} (right).
    pub fn kernel_sublattice(&self, side: Side) -> Result<Sublattice> {
        let t = match side {
            Side::Left => self.clone(),
            Side::Right => self.transpose(),
        };
        let (m, n) = (t.rows, t.cols);
        let k = &self.field;
        let l = k.root_group_order() as i64;
        let mut vars: Vec<String> = Vec::new();
        let mut units = Vec::with_capacity(m * n);
        for e in &t.entries {
            let TwistEntry::Unit(u) = e else {
                return Err(Error::NonDiscreteTwist);
            };
            for (v, &x) in &u.mono {
                if x != 0 && !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
            units.push(u.clone());
        }
        // unknowns: a_1..a_m, then one slack per column for the modular condition
        let nunk = m + n;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..n {
            let mut row = vec![BigInt::from(0); nunk];
            for i in 0..m {
                row[i] = BigInt::from(k.root_exponent(&units[i * n + j])? as i64);
            }
            row[m + j] = BigInt::from(l);
            rows.push(row);
            for v in &vars {
                let mut row = vec![BigInt::from(0); nunk];
                for i in 0..m {
                    row[i] = BigInt::from(*units[i * n + j].mono.get(v).unwrap_or(&0));
                }
                rows.push(row);
            }
        }
        let ker = integer_kernel(&rows, nunk);
        let projected: Vec<Vec<BigInt>> = ker.into_iter().map(|v| v[..m].to_vec()).collect();
        Ok(Sublattice::from_generators(m, &projected))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeIndex;

    #[test]
    fn twist_eval_examples() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::var("q")]]).unwrap();
        let q = k.var("q").unwrap();
        assert_eq!(t.eval(&Degree(vec![2]), &Degree(vec![3])).unwrap(), k.pow(&q, 6).unwrap());
        assert_eq!(t.eval(&Degree(vec![-1]), &Degree(vec![1])).unwrap(), k.inv(&q).unwrap());
        let triv = Twist::trivial(&k, 2, 1);
        assert!(k.is_one(&triv.eval(&Degree(vec![5, 7]), &Degree(vec![3])).unwrap()));
        assert!(t.eval(&Degree(vec![1, 1]), &Degree(vec![1])).is_err());
    }

    #[test]
    fn tilde_adds_sign() {
        let k = Field::rationals();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::root(2, 1)]]).unwrap();
        let tt = t.tilde();
        let v = tt.eval(&Degree(vec![1, 1]), &Degree(vec![1, 1])).unwrap();
        assert_eq!(v, k.int(1)); // (−1)·(−1)
        let v = tt.eval(&Degree(vec![2, 1]), &Degree(vec![3, 1])).unwrap();
        assert_eq!(v, t.eval(&Degree(vec![1]), &Degree(vec![1])).unwrap());
        let triv = Twist::trivial(&k, 1, 1).tilde();
        assert_eq!(triv.eval(&Degree(vec![1, 0]), &Degree(vec![1, 0])).unwrap(), k.int(-1));
    }

    #[test]
    fn kernel_examples() {
        let k = Field::rationals();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::minus_one()]]).unwrap();
        let a = t.kernel_sublattice(Side::Left).unwrap();
        assert_eq!(a.index(), LatticeIndex::Finite(BigInt::from(2)));
        let t1 = Twist::trivial(&k, 1, 1);
        assert_eq!(t1.kernel_sublattice(Side::Left).unwrap().index(), LatticeIndex::Finite(BigInt::from(1)));
        let kq = Field::rational_functions(&["q"]).unwrap();
        let tq = Twist::from_units(&kq, vec![vec![UnitDescriptor::var("q")]]).unwrap();
        let z = tq.kernel_sublattice(Side::Left).unwrap();
        assert_eq!(z.rank(), 0);
        assert_eq!(z.index(), LatticeIndex::Infinite);
    }

    #[test]
    fn kernel_rejects_field_valued_twist() {
        let k = Field::rationals();
        let t = Twist::from_values(&k, vec![vec![k.int(2)]]).unwrap();
        assert_eq!(t.kernel_sublattice(Side::Left), Err(Error::NonDiscreteTwist));
    }

    #[test]
    fn kernel_over_gf7() {
        // ζ₆² = 2 has order 3 in GF(7)
        let k = Field::prime(7).unwrap();
        let t = Twist::from_units(&k, vec![vec![UnitDescriptor::root(6, 2)]]).unwrap();
        let a = t.kernel_sublattice(Side::Left).unwrap();
        assert_eq!(a.index(), LatticeIndex::Finite(BigInt::from(3)));
    }
}
