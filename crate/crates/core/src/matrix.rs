//! Exact integer matrices: a sparse column-major form for boundary maps and a
//! small dense form for unimodular transforms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Index;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Sparse integer matrix stored by columns. Each column holds `(row, value)`
/// pairs sorted by row, with no duplicates and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    /// Rejects out-of-range positions and duplicate `(row, col)` pairs; zero
    /// values are dropped.
    pub fn from_triplets(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Result<Self> {
        let mut columns = vec![Vec::new(); cols];
        for &(r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::MalformedMatrix(format!(
                    "entry ({r}, {c}) outside a {rows}×{cols} matrix"
                )));
            }
            if v != 0 {
                columns[c].push((r, v));
            }
        }
        for (c, col) in columns.iter_mut().enumerate() {
            col.sort_unstable_by_key(|&(r, _)| r);
            if let Some(w) = col.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(Error::MalformedMatrix(format!("duplicate entry ({}, {c})", w[0].0)));
            }
        }
        Ok(Self { rows, cols, columns })
    }

    pub fn from_dense(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::MalformedMatrix(format!(
                "{} values for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        let columns = (0..cols)
            .map(|c| (0..rows).filter_map(|r| Some((r, data[r * cols + c])).filter(|e| e.1 != 0)).collect())
            .collect();
        Ok(Self { rows, cols, columns })
    }

    /// Columns must already be sorted, duplicate-free and zero-free.
    pub(crate) fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0) && c.iter().all(|&(r, v)| r < rows && v != 0)));
        Self { rows, cols: columns.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        match self.columns[c].binary_search_by_key(&r, |&(row, _)| row) {
            Ok(i) => self.columns[c][i].1,
            Err(_) => 0,
        }
    }

    /// `(row, col, value)` triplets in column-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triplets() {
            columns[r].push((c, v));
        }
        Self { rows: self.cols, cols: self.rows, columns }
    }

    /// Row lists: `(col, value)` pairs per row, sorted by column.
    pub(crate) fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        self.transpose().columns
    }

    /// Negates the `k`-th stored entry of column `c`. Returns false if there
    /// is no such entry.
    pub fn negate_entry(&mut self, c: usize, k: usize) -> bool {
        match self.columns.get_mut(c).and_then(|col| col.get_mut(k)) {
            Some(e) => {
                e.1 = -e.1;
                true
            }
            None => false,
        }
    }

    /// Whether `self · rhs` is the zero matrix, computed exactly.
    pub fn product_is_zero(&self, rhs: &SparseIntMatrix) -> Result<bool> {
        if self.cols != rhs.rows {
            return Err(Error::MalformedMatrix(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); self.rows];
        let mut touched = Vec::new();
        for col in &rhs.columns {
            for &(k, b) in col {
                for &(i, a) in &self.columns[k] {
                    if acc[i].is_zero() {
                        touched.push(i);
                    }
                    acc[i] += BigInt::from(a) * BigInt::from(b);
                }
            }
            let mut nonzero = false;
            for i in touched.drain(..) {
                nonzero |= !acc[i].is_zero();
                acc[i] = BigInt::zero();
            }
            if nonzero {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            m.data[r * self.cols + c] = BigInt::from(v);
        }
        m
    }
}

/// Dense row-major matrix of unbounded integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub(crate) fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] -= f · row[src]`
    pub(crate) fn sub_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for c in 0..self.cols {
            let t = &self.data[src * self.cols + c] * f;
            self.data[dst * self.cols + c] -= t;
        }
    }

    /// `col[dst] -= f · col[src]`
    pub(crate) fn sub_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for r in 0..self.rows {
            let t = &self.data[r * self.cols + src] * f;
            self.data[r * self.cols + dst] -= t;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = &mut self.data[r * self.cols + c];
            *v = -core::mem::take(v);
        }
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplet_validation() {
        assert!(SparseIntMatrix::from_triplets(2, 2, &[(0, 0, 1), (0, 0, 2)]).is_err());
        assert!(SparseIntMatrix::from_triplets(2, 2, &[(2, 0, 1)]).is_err());
        let m = SparseIntMatrix::from_triplets(2, 2, &[(1, 0, 3), (0, 0, 0), (0, 1, -1)]).unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(1, 0), 3);
        assert_eq!(m.transpose().get(0, 1), 3);
    }

    #[test]
    fn zero_product_detection() {
        let a = SparseIntMatrix::from_dense(1, 2, &[1, 1]).unwrap();
        let b = SparseIntMatrix::from_dense(2, 1, &[1, -1]).unwrap();
        assert!(a.product_is_zero(&b).unwrap());
        let c = SparseIntMatrix::from_dense(2, 1, &[1, 1]).unwrap();
        assert!(!a.product_is_zero(&c).unwrap());
        assert!(a.product_is_zero(&a).is_err());
    }
}
