//! Sparse exact linear algebra: rank, kernels and linear solves over any
//! [`Field`], plus fraction-free elimination for rational function fields.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, FieldElement, Poly};

/// Sorted list of `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, FieldElement)>;

/// `y + c·x` for sparse vectors.
pub fn axpy(k: &Field, y: &[(usize, FieldElement)], c: &FieldElement, x: &[(usize, FieldElement)]) -> SparseVec {
    if c.is_zero() {
        return y.to_vec();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j >= x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i >= y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, k.mul(c, &x[j].1)));
            j += 1;
        } else {
            let v = k.add(&y[i].1, &k.mul(c, &x[j].1));
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(k: &Field, c: &FieldElement, x: &[(usize, FieldElement)]) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, k.mul(c, v))).collect()
}

/// Convert a dense vector to sparse form.
pub fn sparsify(v: &[FieldElement]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn densify(k: &Field, v: &[(usize, FieldElement)], len: usize) -> Vec<FieldElement> {
    let mut out = vec![k.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// A rectangular matrix stored as sparse rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn from_dense(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    len: r.len(),
                    expected: cols,
                });
            }
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| sparsify(r)).collect(),
        })
    }

    /// Build from sparse rows; indices must be below `cols`.
    pub fn from_sparse_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.iter().all(|(j, _)| *j < cols)));
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Build from sparse columns.
    pub fn from_sparse_cols(rows: usize, cols: Vec<SparseVec>) -> Self {
        let mut data = vec![Vec::new(); rows];
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                data[*i].push((j, v.clone()));
            }
        }
        Matrix {
            rows,
            cols: cols.len(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, FieldElement)] {
        &self.data[i]
    }

    pub fn get(&self, k: &Field, i: usize, j: usize) -> FieldElement {
        self.data[i]
            .iter()
            .find(|(c, _)| *c == j)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| k.zero())
    }

    pub fn set(&mut self, k: &Field, i: usize, j: usize, v: FieldElement) {
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => {
                if v.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    row.insert(pos, (j, v));
                }
            }
        }
        let _ = k;
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_sparse_cols(self.cols, self.data.clone())
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul_vec(&self, k: &Field, x: &[(usize, FieldElement)]) -> SparseVec {
        let dense_x: BTreeMap<usize, &FieldElement> = x.iter().map(|(i, v)| (*i, v)).collect();
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = k.zero();
            for (j, v) in row {
                if let Some(xj) = dense_x.get(j) {
                    acc = k.add(&acc, &k.mul(v, xj));
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    pub fn mul(&self, k: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Vec::new(), |acc, (j, v)| axpy(k, &acc, v, &other.data[*j]))
            })
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    /// Rank over the exact field. Rational function fields use fraction-free
    /// elimination on cleared-denominator polynomial entries.
    pub fn rank(&self, k: &Field) -> usize {
        if matches!(k.descriptor(), FieldDescriptor::RationalFunctions { .. }) {
            bareiss_rank(k, self)
        } else {
            self.rank_by_elimination(k)
        }
    }

    /// Rank by ordinary Gaussian elimination with field division.
    pub fn rank_by_elimination(&self, k: &Field) -> usize {
        let mut e = Echelon::new(k.clone(), self.cols, false);
        for row in &self.data {
            e.insert(row.clone());
        }
        e.rank()
    }

    /// Basis of the right kernel {x : Mx = 0}.
    pub fn kernel_basis(&self, k: &Field) -> Vec<SparseVec> {
        let mut e = Echelon::new(k.clone(), self.rows, true);
        let mut out = Vec::new();
        for col in self.columns() {
            if let Insert::Dependent(rel) = e.insert(col) {
                out.push(rel);
            }
        }
        out
    }

    /// Any solution of Mx = b, or `None` when the system is inconsistent.
    pub fn solve(&self, k: &Field, b: &[(usize, FieldElement)]) -> Option<SparseVec> {
        ColumnSolver::new(k, self).solve(b)
    }
}

/// Outcome of inserting a vector into an [`Echelon`].
#[derive(Clone, Debug)]
pub enum Insert {
    /// The vector was independent and became a pivot at this column.
    Pivot(usize),
    /// The vector was dependent; the payload is a relation among inputs
    /// (coefficient 1 on the new input), or empty when not tracking.
    Dependent(SparseVec),
}

#[derive(Clone, Debug)]
struct PivotRow {
    row: SparseVec,
    combo: SparseVec,
}

/// Incremental row echelon form with optional tracking of how each pivot
/// row is built from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    k: Field,
    dim: usize,
    track: bool,
    inserted: usize,
    pivots: Vec<PivotRow>,
    by_col: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(k: Field, dim: usize, track: bool) -> Self {
        Echelon {
            k,
            dim,
            track,
            inserted: 0,
            pivots: Vec::new(),
            by_col: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_col.keys().copied()
    }

    /// Reduce `v` against the pivots, returning the residual and the
    /// combination (over inputs) that was subtracted.
    pub fn reduce(&self, v: SparseVec) -> (SparseVec, SparseVec) {
        let k = &self.k;
        let mut residual = v;
        let mut combo: SparseVec = Vec::new();
        let mut cursor = 0usize;
        loop {
            let next = residual
                .iter()
                .find(|(c, _)| *c >= cursor && self.by_col.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((col, coeff)) = next else { break };
            let p = &self.pivots[self.by_col[&col]];
            let neg = k.neg(&coeff);
            residual = axpy(k, &residual, &neg, &p.row);
            if self.track {
                combo = axpy(k, &combo, &coeff, &p.combo);
            }
            cursor = col + 1;
        }
        (residual, combo)
    }

    pub fn contains(&self, v: &[(usize, FieldElement)]) -> bool {
        self.reduce(v.to_vec()).0.is_empty()
    }

    pub fn insert(&mut self, v: SparseVec) -> Insert {
        let idx = self.inserted;
        self.inserted += 1;
        let k = self.k.clone();
        let (residual, combo) = self.reduce(v);
        if residual.is_empty() {
            if !self.track {
                return Insert::Dependent(Vec::new());
            }
            // v − combo·inputs = 0
            let rel = axpy(&k, &[(idx, k.one())], &k.int(-1), &combo);
            return Insert::Dependent(rel);
        }
        let (lead, lc) = residual[0].clone();
        let inv = k.inv(&lc).expect("nonzero leading coefficient");
        let row = scale(&k, &inv, &residual);
        let combo = if self.track {
            let c = axpy(&k, &[(idx, k.one())], &k.int(-1), &combo);
            scale(&k, &inv, &c)
        } else {
            Vec::new()
        };
        self.by_col.insert(lead, self.pivots.len());
        self.pivots.push(PivotRow { row, combo });
        Insert::Pivot(lead)
    }

    /// Express `v` as a combination of inserted vectors, if it lies in their span.
    pub fn express(&self, v: &[(usize, FieldElement)]) -> Option<SparseVec> {
        assert!(self.track, "express requires a tracking echelon");
        let (residual, combo) = self.reduce(v.to_vec());
        residual.is_empty().then_some(combo)
    }
}

/// Repeated solves of Mx = b against a fixed matrix.
#[derive(Clone, Debug)]
pub struct ColumnSolver {
    echelon: Echelon,
    kernel: Vec<SparseVec>,
}

impl ColumnSolver {
    pub fn new(k: &Field, m: &Matrix) -> Self {
        Self::from_columns(k, m.rows(), m.columns())
    }

    pub fn from_columns(k: &Field, rows: usize, cols: Vec<SparseVec>) -> Self {
        let mut echelon = Echelon::new(k.clone(), rows, true);
        let mut kernel = Vec::new();
        for c in cols {
            if let Insert::Dependent(rel) = echelon.insert(c) {
                kernel.push(rel);
            }
        }
        ColumnSolver { echelon, kernel }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    pub fn solve(&self, b: &[(usize, FieldElement)]) -> Option<SparseVec> {
        self.echelon.express(b)
    }

    pub fn in_image(&self, b: &[(usize, FieldElement)]) -> bool {
        self.echelon.contains(b)
    }
}

/// Clear denominators row by row and run fraction-free elimination.
fn bareiss_rank(k: &Field, m: &Matrix) -> usize {
    use crate::field::FieldElement::Fraction;
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(m.rows());
    let zero_poly = |k: &Field| match k.zero() {
        Fraction(f) => f.numerator().clone(),
        _ => unreachable!(),
    };
    let zp = zero_poly(k);
    for r in 0..m.rows() {
        let mut den = match k.one() {
            Fraction(f) => f.numerator().clone(),
            _ => unreachable!(),
        };
        for (_, v) in m.row(r) {
            if let Fraction(f) = v {
                let d = f.denominator();
                if !(d.is_constant() && num_traits::One::is_one(&d.constant_term())) {
                    den = den.mul(d);
                }
            }
        }
        let mut row = vec![zp.clone(); m.cols()];
        for (j, v) in m.row(r) {
            if let Fraction(f) = v {
                let scaled = f
                    .numerator()
                    .mul(&den)
                    .div_exact(f.denominator())
                    .expect("denominator divides the row multiplier");
                row[*j] = scaled;
            }
        }
        rows.push(row);
    }
    bareiss_rank_poly(rows, m.cols())
}

/// Fraction-free elimination on a polynomial matrix.
pub fn bareiss_rank_poly(mut a: Vec<Vec<Poly>>, cols: usize) -> usize {
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let mut prev: Option<Poly> = None;
    let mut r = 0;
    for col in 0..cols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        for i in r + 1..nrows {
            for j in col + 1..cols {
                let t = a[r][col].mul(&a[i][j]).sub(&a[i][col].mul(&a[r][j]));
                a[i][j] = match &prev {
                    Some(p) => t.div_exact(p).expect("Bareiss division is exact"),
                    None => t,
                };
            }
            a[i][col] = a[i][col].sub(&a[i][col]);
        }
        prev = Some(a[r][col].clone());
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: &Field, rows: &[&[&str]]) -> Matrix {
        Matrix::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|s| k.parse(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_rank() {
        let k = Field::rationals();
        assert_eq!(m(&k, &[&["1", "0"], &["0", "1"]]).rank(&k), 2);
    }

    #[test]
    fn dependent_rows_over_function_field() {
        let k = Field::rational_functions(&["q"]).unwrap();
        let a = m(&k, &[&["1", "q"], &["q", "q^2"]]);
        assert_eq!(a.rank(&k), 1);
        assert_eq!(a.rank_by_elimination(&k), 1);
        let ker = a.kernel_basis(&k);
        assert_eq!(ker.len(), 1);
        assert!(a.mul_vec(&k, &ker[0]).is_empty());
    }

    #[test]
    fn zero_matrix_rank() {
        let k = Field::prime(5).unwrap();
        assert_eq!(Matrix::zeros(3, 4).rank(&k), 0);
        assert_eq!(Matrix::zeros(3, 4).kernel_basis(&k).len(), 4);
    }

    #[test]
    fn ragged_is_rejected() {
        let k = Field::rationals();
        let r = Matrix::from_dense(vec![vec![k.one()], vec![k.one(), k.zero()]]);
        assert!(matches!(r, Err(Error::RaggedMatrix { row: 1, .. })));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let k = Field::rationals();
        let a = m(&k, &[&["1", "2"], &["2", "4"]]);
        let b = sparsify(&[k.int(3), k.int(6)]);
        let x = a.solve(&k, &b).unwrap();
        assert_eq!(a.mul_vec(&k, &x), b);
        assert!(a.solve(&k, &sparsify(&[k.int(1), k.int(1)])).is_none());
    }
}
