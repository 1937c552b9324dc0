//! Clique (flag) complexes of finite relations.
//!
//! Homology is computed on the unordered complex: a `q`-simplex is a strictly
//! increasing `(q+1)`-tuple of pairwise adjacent vertices, and the increasing
//! order fixes its orientation. Ordered tuples with repeats (the degenerate
//! simplices of the simplicial set) are chain equivalent and never stored.
//!
//! Simplices of each dimension are kept in one flat array, sorted
//! lexicographically; the position of a simplex in that array is its basis
//! index, found by binary search.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::chain::AbstractChainComplex;
use crate::error::{Error, Result};
use crate::matrix::SparseIntMatrix;
use crate::relation::{bit_iter, Graph};

/// Resource caps for complex construction and tensor products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Total number of simplices (or basis cells) across all degrees.
    pub max_simplices: usize,
    /// Stored nonzeros across all boundary matrices of a tensor complex.
    pub max_matrix_entries: usize,
}

impl Limits {
    pub const fn unbounded() -> Self {
        Self { max_simplices: usize::MAX, max_matrix_entries: usize::MAX }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Self { max_simplices: 5_000_000, max_matrix_entries: 50_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    vertex_count: usize,
    max_dim: usize,
    /// `grades[q]` holds the `q`-simplices back to back, `q+1` vertices each.
    grades: Vec<Vec<u32>>,
    truncated: bool,
    limited: bool,
}

impl FlagComplex {
    /// The dimension cap the complex was built with.
    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Top dimension holding at least one simplex.
    pub fn dim(&self) -> usize {
        self.grades.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Whether cliques of dimension above the stored top exist, i.e. whether
    /// chain groups above [`dim`](Self::dim) are unknown rather than zero.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Whether construction stopped early on [`Limits::max_simplices`].
    pub fn hit_limit(&self) -> bool {
        self.limited
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.grades.iter().enumerate().map(|(q, g)| g.len() / (q + 1)).collect()
    }

    pub fn count(&self, q: usize) -> usize {
        self.grades.get(q).map_or(0, |g| g.len() / (q + 1))
    }

    pub fn simplex(&self, q: usize, i: usize) -> &[u32] {
        &self.grades[q][i * (q + 1)..(i + 1) * (q + 1)]
    }

    pub fn simplices(&self, q: usize) -> impl Iterator<Item = &[u32]> {
        self.grades.get(q).map(|g| g.chunks_exact(q + 1)).into_iter().flatten()
    }

    /// Basis index of a strictly increasing vertex tuple.
    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let q = simplex.len().checked_sub(1)?;
        let grade = self.grades.get(q)?;
        let (mut lo, mut hi) = (0, grade.len() / (q + 1));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.simplex(q, mid).cmp(simplex) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Vertices adjacent to every vertex of `simplex` and larger than its last.
fn extensions(g: &Graph, simplex: &[u32], scratch: &mut [u64]) {
    let last = *simplex.last().expect("nonempty simplex") as usize;
    scratch.copy_from_slice(g.row(simplex[0] as usize));
    for &v in &simplex[1..] {
        for (s, w) in scratch.iter_mut().zip(g.row(v as usize)) {
            *s &= w;
        }
    }
    let (word, bit) = ((last + 1) / 64, (last + 1) % 64);
    let len = scratch.len();
    for s in &mut scratch[..word.min(len)] {
        *s = 0;
    }
    if bit != 0 && word < scratch.len() {
        scratch[word] &= !0u64 << bit;
    }
}

fn enumerate(g: &Graph, max_dim: usize, limits: &Limits, partial: bool) -> Result<FlagComplex> {
    let n = g.vertex_count();
    if n > u32::MAX as usize {
        return Err(Error::ResourceLimit(format!("{n} vertices")));
    }
    if n > limits.max_simplices {
        return Err(Error::ResourceLimit(format!("{n} vertices exceed the simplex cap {}", limits.max_simplices)));
    }
    let mut grades = vec![(0..n as u32).collect::<Vec<u32>>()];
    let mut total = n;
    let mut scratch = vec![0u64; g.words()];
    let mut limited = false;
    while grades.len() <= max_dim {
        let q = grades.len();
        let prev = &grades[q - 1];
        let mut next = Vec::new();
        let mut over = false;
        for s in prev.chunks_exact(q) {
            extensions(g, s, &mut scratch);
            for v in bit_iter(&scratch) {
                next.extend_from_slice(s);
                next.push(v as u32);
                total += 1;
                if total > limits.max_simplices {
                    over = true;
                    break;
                }
            }
            if over {
                break;
            }
        }
        if over {
            if !partial {
                return Err(Error::ResourceLimit(format!(
                    "flag complex exceeds {} simplices in dimension {q}",
                    limits.max_simplices
                )));
            }
            limited = true;
            break;
        }
        if next.is_empty() {
            break;
        }
        grades.push(next);
    }
    let top = grades.len() - 1;
    let truncated = limited
        || (top == max_dim
            && grades[top].chunks_exact(top + 1).any(|s| {
                extensions(g, s, &mut scratch);
                scratch.iter().any(|&w| w != 0)
            }));
    Ok(FlagComplex { vertex_count: n, max_dim, grades, truncated, limited })
}

/// All cliques with at most `max_dim + 1` vertices, as a simplicial complex.
///
/// Each `q`-simplex is produced by extending a `(q-1)`-simplex with a larger
/// vertex adjacent to all of its members, which yields every grade already
/// in lexicographic order.
pub fn build_flag_complex(g: &Graph, max_dim: usize, limits: &Limits) -> Result<FlagComplex> {
    enumerate(g, max_dim, limits, false)
}

/// Like [`build_flag_complex`], but when the simplex cap is hit the complex
/// is returned truncated at the last dimension that fit completely (see
/// [`FlagComplex::hit_limit`]).
pub fn build_flag_complex_partial(g: &Graph, max_dim: usize, limits: &Limits) -> Result<FlagComplex> {
    enumerate(g, max_dim, limits, true)
}

/// Boundary `∂_q`: one column per `q`-simplex, with `(-1)^i` on the face
/// omitting its `i`-th vertex.
pub fn boundary_matrix(k: &FlagComplex, q: usize) -> Result<SparseIntMatrix> {
    if q == 0 || q > k.max_dim() {
        return Err(Error::DegreeOutOfRange { q, min: 1, max: k.max_dim() });
    }
    let mut face = vec![0u32; q];
    let columns = k
        .simplices(q)
        .map(|s| {
            let mut col: Vec<(usize, i64)> = (0..=q)
                .map(|i| {
                    face[..i].copy_from_slice(&s[..i]);
                    face[i..].copy_from_slice(&s[i + 1..]);
                    let row = k.index_of(&face).expect("flag complexes are closed under faces");
                    (row, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    Ok(SparseIntMatrix::from_columns(k.count(q - 1), columns))
}

/// The simplicial chain complex of `k`, in degrees `0..=k.dim()`.
pub fn chain_complex(k: &FlagComplex) -> AbstractChainComplex {
    let boundaries = (1..=k.dim())
        .map(|q| boundary_matrix(k, q).expect("degree within cap"))
        .collect();
    AbstractChainComplex::new(k.f_vector(), boundaries, k.is_truncated())
        .expect("boundary shapes follow the f-vector")
}
