use num_bigint::BigInt;
use num_traits::Zero;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarMat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        ScalarMat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        ScalarMat {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = self.get(r, c).inv();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j) - &(&factor * self.get(r, j));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right nullspace {v : M v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&(m.get(r, fc).clone());
            }
            basis.push(v);
        }
        basis
    }

    /// Solve M x = b; returns one solution if consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = ScalarMat::zero(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or None when singular.
    pub fn inverse(&self) -> Option<ScalarMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = ScalarMat::zero(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut out = ScalarMat::zero(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    pub fn mat_mul(&self, other: &ScalarMat) -> ScalarMat {
        assert_eq!(self.cols, other.rows);
        let mut out = ScalarMat::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Incrementally maintained row span in echelon form. Used for span
/// membership, dimension counting, and greedy basis extraction.
#[derive(Debug, Clone)]
pub struct SpanBasis {
    field: Field,
    width: usize,
    /// Echelon rows paired with their pivot column, kept sorted by pivot.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBasis {
    pub fn new(field: Field, width: usize) -> Self {
        SpanBasis {
            field,
            width,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut Vec<Scalar>) {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let factor = v[*pivot].clone();
            for j in *pivot..self.width {
                if !row[j].is_zero() {
                    v[j] = &v[j] - &(&factor * &row[j]);
                }
            }
        }
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // Back-substitute into existing rows so membership tests stay cheap.
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for j in pivot..self.width {
                    if !v[j].is_zero() {
                        row[j] = &row[j] - &(&factor * &v[j]);
                    }
                }
            }
        }
        let pos = self
            .rows
            .binary_search_by_key(&pivot, |(p, _)| *p)
            .unwrap_err();
        self.rows.insert(pos, (pivot, v));
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Scalar::is_zero)
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IntegerMatrix { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BigInt::is_zero)
    }

    pub fn to_scalar_mat(&self, field: Field) -> ScalarMat {
        let mut m = ScalarMat::zero(field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, field.from_bigint(self.get(i, j)));
            }
        }
        m
    }

    /// Rank and right-nullspace basis over the given field.
    pub fn rank_nullspace(&self, field: Field) -> (usize, Vec<Vec<Scalar>>) {
        let m = self.to_scalar_mat(field);
        let rank = m.rank();
        (rank, m.nullspace())
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free Bareiss elimination. Square input only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut m = self.data.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = 1i64;
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if at(&m, k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !at(&m, i, k).is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j)) / &prev;
                    m[i * n + j] = v;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        let det = at(&m, n - 1, n - 1);
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    pub fn check_minor_size(&self, s: usize) -> Result<()> {
        if s == 0 || s > self.rows.min(self.cols) {
            return Err(Error::InvalidS {
                s,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }
}
