//! Smith normal form over ℤ and rank over 𝔽_p.
//!
//! Boundary matrices of flag complexes start with ±1 entries and stay very
//! sparse, so most of the work is sparse elimination on unit pivots: a unit
//! at `(r, c)` can be cleared from its column by row operations and from its
//! row by column operations without touching anything else, contributing an
//! invariant factor of 1. Pivots are chosen Markowitz-style (shortest
//! column, then shortest row). Whatever is left once no unit entry remains
//! is usually tiny and goes through a dense Smith reduction over unbounded
//! integers.
//!
//! The sparse phase first runs on checked `i64`; if any intermediate value
//! overflows it restarts on [`BigInt`].

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, SparseIntMatrix};

pub(crate) trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn unit_inverse(&self) -> Option<Self>;
    /// `self - a·b`, or `None` on overflow.
    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self>;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn zero_like(&self) -> Self;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.abs() == 1).then_some(*self)
    }

    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(a.checked_mul(*b)?)
    }

    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }

    fn zero_like(&self) -> Self {
        0
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.abs().is_one().then(|| self.clone())
    }

    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        Some(self - a * b)
    }

    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }

    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
}

/// Residue modulo a prime `p < 2³²`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct ModP {
    v: u64,
    p: u64,
}

impl ModP {
    fn new(v: i64, p: u64) -> Self {
        Self { v: v.rem_euclid(p as i64) as u64, p }
    }

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self.v, 1 % self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Self { v: acc, p: self.p }
    }
}

impl Scalar for ModP {
    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn unit_inverse(&self) -> Option<Self> {
        (self.v != 0).then(|| self.pow(self.p - 2))
    }

    fn sub_mul(&self, a: &Self, b: &Self) -> Option<Self> {
        let ab = a.v * b.v % self.p;
        Some(Self { v: (self.v + self.p - ab) % self.p, p: self.p })
    }

    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(Self { v: self.v * rhs.v % self.p, p: self.p })
    }

    fn zero_like(&self) -> Self {
        Self { v: 0, p: self.p }
    }
}

struct Overflow;

struct UnitEliminator<T> {
    rows: Vec<Vec<(usize, T)>>,
    /// Rows holding a nonzero in each column.
    cols: Vec<BTreeSet<usize>>,
    /// Column is known to hold no unit since it last changed.
    stuck: Vec<bool>,
}

impl<T: Scalar> UnitEliminator<T> {
    fn new(m: &SparseIntMatrix, convert: impl Fn(i64) -> T) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = m
            .row_lists()
            .into_iter()
            .map(|r| r.into_iter().map(|(c, v)| (c, convert(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        rows.resize_with(m.rows(), Vec::new);
        let mut cols = vec![BTreeSet::new(); m.cols()];
        for (r, row) in rows.iter().enumerate() {
            for &(c, _) in row {
                cols[c].insert(r);
            }
        }
        Self { rows, stuck: vec![false; m.cols()], cols }
    }

    fn value(&self, r: usize, c: usize) -> Option<&T> {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0).ok().map(|i| &row[i].1)
    }

    fn choose_pivot(&mut self) -> Option<(usize, usize)> {
        loop {
            let c = (0..self.cols.len())
                .filter(|&c| !self.stuck[c] && !self.cols[c].is_empty())
                .min_by_key(|&c| self.cols[c].len())?;
            let best = self.cols[c]
                .iter()
                .copied()
                .filter(|&r| self.value(r, c).is_some_and(|v| v.unit_inverse().is_some()))
                .min_by_key(|&r| self.rows[r].len());
            match best {
                Some(r) => return Some((r, c)),
                None => self.stuck[c] = true,
            }
        }
    }

    /// Eliminates unit pivots until none remain; returns their number.
    fn run(&mut self) -> Result<usize, Overflow> {
        let mut pivots = 0;
        while let Some((p, c)) = self.choose_pivot() {
            let inv = self.value(p, c).and_then(T::unit_inverse).expect("pivot is a unit");
            let pivot_row = core::mem::take(&mut self.rows[p]);
            let targets: Vec<usize> = self.cols[c].iter().copied().filter(|&r| r != p).collect();
            for r in targets {
                let a = self.value(r, c).expect("column index is consistent").clone();
                let f = a.mul(&inv).ok_or(Overflow)?;
                let old = core::mem::take(&mut self.rows[r]);
                let new = self.axpy(r, &old, &f, &pivot_row)?;
                self.rows[r] = new;
            }
            for &(col, _) in &pivot_row {
                self.cols[col].remove(&p);
                self.stuck[col] = false;
            }
            debug_assert!(self.cols[c].is_empty());
            pivots += 1;
        }
        Ok(pivots)
    }

    /// `target - f·src` for row `r`, keeping the column index in sync.
    fn axpy(&mut self, r: usize, target: &[(usize, T)], f: &T, src: &[(usize, T)]) -> Result<Vec<(usize, T)>, Overflow> {
        let mut out = Vec::with_capacity(target.len() + src.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < src.len() {
            let ti = target.get(i).map(|e| e.0).unwrap_or(usize::MAX);
            let sj = src.get(j).map(|e| e.0).unwrap_or(usize::MAX);
            if ti < sj {
                out.push(target[i].clone());
                i += 1;
            } else if sj < ti {
                let v = f.zero_like().sub_mul(f, &src[j].1).ok_or(Overflow)?;
                if !v.is_zero() {
                    self.cols[sj].insert(r);
                    self.stuck[sj] = false;
                    out.push((sj, v));
                }
                j += 1;
            } else {
                let v = target[i].1.sub_mul(f, &src[j].1).ok_or(Overflow)?;
                self.stuck[sj] = false;
                if v.is_zero() {
                    self.cols[sj].remove(&r);
                } else {
                    out.push((sj, v));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(out)
    }
}

/// Unimodular `U` (rows) and `V` (columns) with `D = U·M·V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transforms {
    pub u: IntMatrix,
    pub v: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    rows: usize,
    cols: usize,
    /// Nonzero diagonal entries, positive, each dividing the next.
    diag: Vec<BigInt>,
    transforms: Option<Transforms>,
}

impl SmithForm {
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// The nonzero invariant factors, units included.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diag
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.diag.iter().filter(|d| !d.is_one())
    }

    pub fn transforms(&self) -> Option<&Transforms> {
        self.transforms.as_ref()
    }

    /// The diagonal matrix `D` in full.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zero(self.rows, self.cols);
        for (i, v) in self.diag.iter().enumerate() {
            *d.at_mut(i, i) = v.clone();
        }
        d
    }
}

/// Smith normal form of `m` (invariant factors only).
pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let (ones, rest) = match eliminate_integer::<i64>(m, |v| v) {
        Ok(r) => r,
        Err(Overflow) => eliminate_integer::<BigInt>(m, BigInt::from)
            .unwrap_or_else(|_| unreachable!("unbounded integers cannot overflow")),
    };
    let (tail, _) = dense_smith(rest, false);
    let mut diag = vec![BigInt::one(); ones];
    diag.extend(tail);
    SmithForm { rows: m.rows(), cols: m.cols(), diag, transforms: None }
}

/// Smith normal form together with the unimodular transforms. Dense; meant
/// for small matrices.
pub fn smith_normal_form_with_transforms(m: &SparseIntMatrix) -> SmithForm {
    let (diag, transforms) = dense_smith(m.to_dense(), true);
    SmithForm { rows: m.rows(), cols: m.cols(), diag, transforms }
}

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u32) -> usize {
    let p = u64::from(p);
    let mut e = UnitEliminator::new(m, |v| ModP::new(v, p));
    let rank = e.run().unwrap_or_else(|_| unreachable!("field arithmetic cannot overflow"));
    debug_assert!(e.rows.iter().all(Vec::is_empty));
    rank
}

/// Runs the sparse unit phase and returns the number of unit pivots and the
/// remaining (compacted) block as a dense matrix.
fn eliminate_integer<T>(m: &SparseIntMatrix, convert: impl Fn(i64) -> T) -> Result<(usize, IntMatrix), Overflow>
where
    T: Scalar + Into<BigInt>,
{
    let mut e = UnitEliminator::new(m, convert);
    let ones = e.run()?;
    let live_rows: Vec<usize> = (0..e.rows.len()).filter(|&r| !e.rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..e.cols.len()).filter(|&c| !e.cols[c].is_empty()).collect();
    let mut rest = IntMatrix::zero(live_rows.len(), live_cols.len());
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in core::mem::take(&mut e.rows[r]) {
            let j = live_cols.binary_search(&c).expect("live column");
            *rest.at_mut(i, j) = v.into();
        }
    }
    Ok((ones, rest))
}

fn min_abs_nonzero(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            let v = &a[(i, j)];
            if !Zero::is_zero(v) && best.as_ref().is_none_or(|(_, b)| v.abs() < *b) {
                best = Some(((i, j), v.abs()));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Smallest nonzero on the pivot cross (column `t` below, row `t` right).
fn min_on_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let cross = (t..a.rows()).map(|i| (i, t)).chain((t + 1..a.cols()).map(|j| (t, j)));
    cross
        .filter(|&p| !Zero::is_zero(&a[p]))
        .min_by_key(|&p| a[p].abs())
        .expect("cross has a nonzero entry")
}

/// Dense Smith reduction. Returns the positive nonzero diagonal and, when
/// `track` is set, the transforms.
fn dense_smith(mut a: IntMatrix, track: bool) -> (Vec<BigInt>, Option<Transforms>) {
    let (rows, cols) = (a.rows(), a.cols());
    let mut tr = track.then(|| Transforms { u: IntMatrix::identity(rows), v: IntMatrix::identity(cols) });
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_nonzero(&a, t) else { break };
        swap_rows(&mut a, &mut tr, t, pi);
        swap_cols(&mut a, &mut tr, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !Zero::is_zero(&a[(i, t)]) {
                    let f = a[(i, t)].div_floor(&a[(t, t)]);
                    a.sub_row(i, t, &f);
                    if let Some(tr) = tr.as_mut() {
                        tr.u.sub_row(i, t, &f);
                    }
                    clean &= Zero::is_zero(&a[(i, t)]);
                }
            }
            for j in t + 1..cols {
                if !Zero::is_zero(&a[(t, j)]) {
                    let f = a[(t, j)].div_floor(&a[(t, t)]);
                    a.sub_col(j, t, &f);
                    if let Some(tr) = tr.as_mut() {
                        tr.v.sub_col(j, t, &f);
                    }
                    clean &= Zero::is_zero(&a[(t, j)]);
                }
            }
            if !clean {
                let (i, j) = min_on_cross(&a, t);
                swap_rows(&mut a, &mut tr, t, i);
                swap_cols(&mut a, &mut tr, t, j);
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match bad_row {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    a.sub_row(t, i, &minus_one);
                    if let Some(tr) = tr.as_mut() {
                        tr.u.sub_row(t, i, &minus_one);
                    }
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(tr) = tr.as_mut() {
                tr.u.negate_row(t);
            }
        }
        diag.push(a[(t, t)].clone());
        t += 1;
    }
    (diag, tr)
}

fn swap_rows(a: &mut IntMatrix, tr: &mut Option<Transforms>, x: usize, y: usize) {
    a.swap_rows(x, y);
    if let Some(tr) = tr.as_mut() {
        tr.u.swap_rows(x, y);
    }
}

fn swap_cols(a: &mut IntMatrix, tr: &mut Option<Transforms>, x: usize, y: usize) {
    a.swap_cols(x, y);
    if let Some(tr) = tr.as_mut() {
        tr.v.swap_cols(x, y);
    }
}
