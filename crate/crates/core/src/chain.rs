//! Finite free chain complexes over ℤ and their tensor products.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flag::Limits;
use crate::matrix::SparseIntMatrix;

/// `C_0 ← C_1 ← … ← C_top`, with `C_q = ℤ^{dims[q]}`.
///
/// When `truncated` is set the groups above `top` exist but were not built,
/// so anything that depends on them is "not computed" rather than zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractChainComplex {
    dims: Vec<usize>,
    /// `boundaries[q - 1]` is `∂_q : C_q → C_{q-1}`.
    boundaries: Vec<SparseIntMatrix>,
    truncated: bool,
}

impl AbstractChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseIntMatrix>, truncated: bool) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::MalformedMatrix(format!(
                "{} boundary maps for {} chain groups",
                boundaries.len(),
                dims.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let q = i + 1;
            if d.rows() != dims[q - 1] || d.cols() != dims[q] {
                return Err(Error::MalformedMatrix(format!(
                    "boundary in degree {q} is {}×{}, expected {}×{}",
                    d.rows(),
                    d.cols(),
                    dims[q - 1],
                    dims[q]
                )));
            }
        }
        Ok(Self { dims, boundaries, truncated })
    }

    /// `ℤ` in degree 0.
    pub fn point() -> Self {
        Self { dims: vec![1], boundaries: Vec::new(), truncated: false }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Rank of `C_q`, or `None` if `C_q` was not built.
    pub fn dim(&self, q: usize) -> Option<usize> {
        match self.dims.get(q) {
            Some(&d) => Some(d),
            None if self.truncated => None,
            None => Some(0),
        }
    }

    /// `∂_q` for `1 ≤ q ≤ top`.
    pub fn boundary(&self, q: usize) -> Option<&SparseIntMatrix> {
        q.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    /// Whether `∂_q` is known (possibly as a map from or to the zero group).
    pub fn knows_boundary(&self, q: usize) -> bool {
        q < self.dims.len() || !self.truncated
    }

    /// Verifies `∂_q ∘ ∂_{q+1} = 0` in every degree, exactly.
    pub fn check_boundaries_compose(&self) -> Result<()> {
        for q in 1..self.boundaries.len() {
            if !self.boundaries[q - 1].product_is_zero(&self.boundaries[q])? {
                return Err(Error::NotAComplex(q));
            }
        }
        Ok(())
    }

    /// `Σ (-1)^q dims[q]` over the built degrees.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Negates one stored entry of `∂_q`. Used to check that verification
    /// notices a corrupted differential.
    pub fn negate_boundary_entry(&mut self, q: usize, col: usize, k: usize) -> bool {
        match q.checked_sub(1).and_then(|i| self.boundaries.get_mut(i)) {
            Some(d) => d.negate_entry(col, k),
            None => false,
        }
    }
}

/// Tensor product `A ⊗ B` through degree `max_deg`.
///
/// The degree-`n` basis is the concatenation of blocks `A_i ⊗ B_{n-i}` for
/// increasing `i`; inside a block `x_s ⊗ y_t` sits at `s·dim B_{n-i} + t`.
/// The differential is `∂(x⊗y) = ∂x⊗y + (-1)^i x⊗∂y`.
pub fn tensor_chain_complex(
    a: &AbstractChainComplex,
    b: &AbstractChainComplex,
    max_deg: usize,
    limits: &Limits,
) -> Result<AbstractChainComplex> {
    if a.dims.is_empty() || b.dims.is_empty() {
        return AbstractChainComplex::new(Vec::new(), Vec::new(), a.truncated || b.truncated);
    }
    let natural = (a.dims.len() - 1) + (b.dims.len() - 1);
    let mut top = natural.min(max_deg);
    if a.truncated {
        top = top.min(a.dims.len() - 1);
    }
    if b.truncated {
        top = top.min(b.dims.len() - 1);
    }
    let truncated = a.truncated || b.truncated || max_deg < natural;

    let da = |i: usize| a.dims.get(i).copied().unwrap_or(0);
    let db = |j: usize| b.dims.get(j).copied().unwrap_or(0);

    // offsets[n][i] = start of block A_i ⊗ B_{n-i} in degree n.
    let mut offsets = Vec::with_capacity(top + 1);
    let mut dims = Vec::with_capacity(top + 1);
    let mut cells = 0usize;
    let mut entries = 0usize;
    for n in 0..=top {
        let mut off = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        for i in 0..=n {
            off.push(acc);
            let block = da(i)
                .checked_mul(db(n - i))
                .ok_or_else(|| Error::ResourceLimit(format!("tensor degree {n} overflows")))?;
            acc = acc.checked_add(block).ok_or_else(|| Error::ResourceLimit(format!("tensor degree {n} overflows")))?;
            if n > 0 {
                let j = n - i;
                let from_a = a.boundary(i).map_or(0, |d| d.nnz().saturating_mul(db(j)));
                let from_b = b.boundary(j).map_or(0, |d| d.nnz().saturating_mul(da(i)));
                entries = entries.saturating_add(from_a).saturating_add(from_b);
            }
        }
        cells = cells.saturating_add(acc);
        if cells > limits.max_simplices || entries > limits.max_matrix_entries {
            return Err(Error::ResourceLimit(format!(
                "tensor complex through degree {n}: {cells} cells, {entries} matrix entries"
            )));
        }
        offsets.push(off);
        dims.push(acc);
    }

    let mut boundaries = Vec::with_capacity(top);
    for n in 1..=top {
        let mut columns = Vec::with_capacity(dims[n]);
        for i in 0..=n {
            let j = n - i;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for s in 0..da(i) {
                for t in 0..db(j) {
                    let mut col = Vec::new();
                    if let Some(dx) = a.boundary(i) {
                        let base = offsets[n - 1][i - 1];
                        col.extend(dx.column(s).iter().map(|&(r, v)| (base + r * db(j) + t, v)));
                    }
                    if let Some(dy) = b.boundary(j) {
                        let base = offsets[n - 1][i];
                        col.extend(dy.column(t).iter().map(|&(r, v)| (base + s * db(j - 1) + r, sign * v)));
                    }
                    columns.push(col);
                }
            }
        }
        boundaries.push(SparseIntMatrix::from_columns(dims[n - 1], columns));
    }
    AbstractChainComplex::new(dims, boundaries, truncated)
}
