//! Finite symmetric relations, their products and metric thresholds.
//!
//! A [`Graph`] stands for the maximal generating relation `E ∪ Δ` of the
//! semi-uniform structure it generates. The diagonal is implicit and never
//! stored. Product vertices are indexed row-major: `(v, v')` has index
//! `v * n' + v'` where `n'` is the vertex count of the right factor.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::flag::{build_flag_complex, Limits};

/// A finite undirected graph with dense vertex indices `0..n`.
///
/// Adjacency is kept as one bitset per vertex. The diagonal is implicitly
/// related and the stored diagonal bits are always clear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Symmetric closure of `edges` on `n` vertices. Self-pairs are dropped.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u != v {
                g.set(u, v);
                g.set(v, u);
            }
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        let words = n.div_ceil(64);
        let len = n
            .checked_mul(words)
            .ok_or_else(|| Error::ResourceLimit(format!("adjacency of {n} vertices")))?;
        Ok(Self { n, words, bits: vec![0; len] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::edgeless(n)?;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.set(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Builds a graph from a row-major `n × n` relation matrix.
    ///
    /// The matrix must be symmetric; directed relations are rejected. Diagonal
    /// entries are ignored.
    pub fn from_relation_matrix(n: usize, related: &[bool]) -> Result<Self> {
        if related.len() != n * n {
            return Err(Error::InvalidParameter(format!(
                "relation matrix has {} entries, expected {}",
                related.len(),
                n * n
            )));
        }
        let mut g = Self::edgeless(n)?;
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                if related[u * n + v] != related[v * n + u] {
                    return Err(Error::Asymmetric(u.min(v), u.max(v)));
                }
                if related[u * n + v] {
                    g.set(u, v);
                }
            }
        }
        Ok(g)
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// True iff `{u, v}` is an edge. Never true on the diagonal.
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Membership in the reflexive relation `E ∪ Δ`.
    pub fn related(&self, u: usize, v: usize) -> bool {
        (u == v && u < self.n) || self.is_adjacent(u, v)
    }

    /// Neighbour bitset of `v`, `words()` words long.
    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bit_iter(self.row(v))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }
}

pub(crate) fn bit_iter(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            }
        })
    })
}

fn product_size(a: usize, b: usize) -> Result<usize> {
    a.checked_mul(b)
        .filter(|n| n.checked_mul(*n).is_some())
        .ok_or_else(|| Error::ResourceLimit(format!("product of {a} and {b} vertices overflows")))
}

/// Strong graph product `G ⊠ H`.
///
/// `(v₀,v₀')` and `(v₁,v₁')` are adjacent iff one of
/// 1. `v₀v₁ ∈ E` and `v₀'v₁' ∈ E'`,
/// 2. `v₀ = v₁` and `v₀'v₁' ∈ E'`,
/// 3. `v₀v₁ ∈ E` and `v₀' = v₁'`.
pub fn strong_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let mut out = Graph::edgeless(product_size(ng, nh)?)?;
    for v0 in 0..ng {
        for w0 in 0..nh {
            for v1 in 0..ng {
                for w1 in 0..nh {
                    let both = g.is_adjacent(v0, v1) && h.is_adjacent(w0, w1);
                    let right = v0 == v1 && h.is_adjacent(w0, w1);
                    let left = g.is_adjacent(v0, v1) && w0 == w1;
                    if both || right || left {
                        out.set(v0 * nh + w0, v1 * nh + w1);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Maximal relation of the product semi-uniform structure `σ(G) × σ(H)`:
/// the product `(E ∪ Δ) × (E' ∪ Δ')` with the diagonal removed.
pub fn semi_uniform_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let n = product_size(ng, nh)?;
    let mut out = Graph::edgeless(n)?;
    for a in 0..n {
        for b in 0..n {
            if a != b && g.related(a / nh, b / nh) && h.related(a % nh, b % nh) {
                out.set(a, b);
            }
        }
    }
    Ok(out)
}

pub fn relation_equals(g: &Graph, h: &Graph) -> Result<bool> {
    if g.vertex_count() != h.vertex_count() {
        return Err(Error::VertexCountMismatch(g.vertex_count(), h.vertex_count()));
    }
    Ok(g.bits == h.bits)
}

/// Number of `(k+1)`-tuples of vertices, repeats allowed, that are pairwise
/// related under `E ∪ Δ`; that is, the number of `k`-simplices of the
/// simplicial set generated by the relation, degenerate ones included.
///
/// A tuple is admissible iff its underlying set is a clique, so the count is
/// `Σ_s c_s · surj(k+1, s)` over clique sizes `s`.
pub fn tuple_count(g: &Graph, k: usize) -> Result<BigUint> {
    let len = k + 1;
    let flag = build_flag_complex(g, k, &Limits::unbounded())?;
    let surj = surjection_counts(len);
    let mut total = BigUint::zero();
    for (dim, count) in flag.f_vector().into_iter().enumerate() {
        total += &surj[dim + 1] * BigUint::from(count);
    }
    Ok(total)
}

/// `surj[s]` = number of surjections from a `len`-set onto an `s`-set.
fn surjection_counts(len: usize) -> Vec<BigUint> {
    // Row recurrence S(m, s) = s·S(m-1, s) + S(m-1, s-1) on surjection counts
    // T(m, s) = s!·S(m, s): T(m, s) = s·(T(m-1, s) + T(m-1, s-1)).
    let mut row = vec![BigUint::zero(); len + 1];
    row[0] = BigUint::from(1u8);
    for _ in 0..len {
        let mut next = vec![BigUint::zero(); len + 1];
        for s in 1..=len {
            next[s] = (&row[s] + &row[s - 1]) * BigUint::from(s);
        }
        row = next;
    }
    row
}

/// Finite metric space with exact rational distances.
///
/// The triangle inequality is not enforced: only the threshold relations
/// derived from the distances matter here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    n: usize,
    dist: Vec<BigRational>,
}

impl FiniteMetricSpace {
    /// `dist` is row-major `n × n`.
    pub fn new(n: usize, dist: Vec<BigRational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyVertexSet);
        }
        if dist.len() != n * n {
            return Err(Error::InvalidMetric(format!(
                "{} entries for {n} points",
                dist.len()
            )));
        }
        for i in 0..n {
            if !dist[i * n + i].is_zero() {
                return Err(Error::InvalidMetric(format!("d({i},{i}) = {} is not zero", dist[i * n + i])));
            }
            for j in 0..n {
                let d = &dist[i * n + j];
                if d.is_negative() {
                    return Err(Error::InvalidMetric(format!("d({i},{j}) = {d} is negative")));
                }
                if *d != dist[j * n + i] {
                    return Err(Error::InvalidMetric(format!(
                        "d({i},{j}) = {d} but d({j},{i}) = {}",
                        dist[j * n + i]
                    )));
                }
            }
        }
        Ok(Self { n, dist })
    }

    pub fn point_count(&self) -> usize {
        self.n
    }

    pub fn dist(&self, i: usize, j: usize) -> &BigRational {
        &self.dist[i * self.n + j]
    }

    pub fn max_distance(&self) -> BigRational {
        self.dist.iter().max().cloned().unwrap_or_else(BigRational::zero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThresholdMode {
    /// `d ≤ r`
    Closed,
    /// `d < r`
    Open,
}

/// A scale `r` and comparison mode selecting `U_{≤r}` or `U_r`.
///
/// On a finite space the closed relation `U_{≤r}` is also the stable term of
/// the filter generated by the sets `U_{r+ε}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    value: BigRational,
    mode: ThresholdMode,
}

impl Threshold {
    pub fn new(value: BigRational, mode: ThresholdMode) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidParameter(format!("negative threshold {value}")));
        }
        Ok(Self { value, mode })
    }

    pub fn closed(value: BigRational) -> Result<Self> {
        Self::new(value, ThresholdMode::Closed)
    }

    pub fn open(value: BigRational) -> Result<Self> {
        Self::new(value, ThresholdMode::Open)
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn mode(&self) -> ThresholdMode {
        self.mode
    }

    pub fn admits(&self, d: &BigRational) -> bool {
        match self.mode {
            ThresholdMode::Closed => *d <= self.value,
            ThresholdMode::Open => *d < self.value,
        }
    }
}

pub fn relation_from_metric(m: &FiniteMetricSpace, t: &Threshold) -> Graph {
    let n = m.point_count();
    let mut g = Graph::edgeless(n).expect("metric spaces are nonempty");
    for i in 0..n {
        for j in 0..n {
            if i != j && t.admits(m.dist(i, j)) {
                g.set(i, j);
            }
        }
    }
    g
}

/// Product with `d((x₁,y₁),(x₂,y₂)) = max(d_X(x₁,x₂), d_Y(y₁,y₂))`, indexed
/// row-major like [`strong_product`].
pub fn max_metric_product(a: &FiniteMetricSpace, b: &FiniteMetricSpace) -> Result<FiniteMetricSpace> {
    let (na, nb) = (a.point_count(), b.point_count());
    let n = product_size(na, nb)?;
    let mut dist = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let dx = a.dist(p / nb, q / nb);
            let dy = b.dist(p % nb, q % nb);
            dist.push(if dx >= dy { dx.clone() } else { dy.clone() });
        }
    }
    Ok(FiniteMetricSpace { n, dist })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    fn cycle4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let c4 = cycle4();
        assert_eq!(c4.edge_count(), 4);
        let g = Graph::new(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), [(0, 1)]);
        let g = Graph::new(2, &[(0, 0)]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(g.related(0, 0));
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::new(0, &[]), Err(Error::EmptyVertexSet));
    }

    #[test]
    fn relation_matrix_rejects_directed_input() {
        let m = [false, true, false, false];
        assert_eq!(Graph::from_relation_matrix(2, &m), Err(Error::Asymmetric(0, 1)));
        let m = [true, true, true, false];
        assert_eq!(Graph::from_relation_matrix(2, &m).unwrap().edge_count(), 1);
    }

    #[test]
    fn strong_product_examples() {
        let k2 = Graph::complete(2).unwrap();
        let p = strong_product(&k2, &k2).unwrap();
        assert!(relation_equals(&p, &Graph::complete(4).unwrap()).unwrap());
        assert_eq!(p.edge_count(), 6);

        let k1 = Graph::complete(1).unwrap();
        assert_eq!(strong_product(&cycle4(), &k1).unwrap(), cycle4());

        let c4c4 = strong_product(&cycle4(), &cycle4()).unwrap();
        assert_eq!(c4c4.vertex_count(), 16);
        assert!((0..16).all(|v| c4c4.degree(v) == 8));
        assert_eq!(c4c4.edge_count(), 64);
    }

    #[test]
    fn strong_product_edge_count_by_enumeration() {
        // Oracle: enumerate unordered pairs of product vertices directly from
        // the closed-neighbourhood description.
        let c4 = cycle4();
        let mut count = 0;
        for a in 0..16usize {
            for b in a + 1..16 {
                if c4.related(a / 4, b / 4) && c4.related(a % 4, b % 4) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 64);
    }

    #[test]
    fn relation_equals_examples() {
        assert!(!relation_equals(&cycle4(), &Graph::complete(4).unwrap()).unwrap());
        assert!(relation_equals(&cycle4(), &cycle4()).unwrap());
        assert_eq!(
            relation_equals(&cycle4(), &Graph::complete(3).unwrap()),
            Err(Error::VertexCountMismatch(4, 3))
        );
    }

    #[test]
    fn tuple_count_examples() {
        for n in 1..5usize {
            let kn = Graph::complete(n).unwrap();
            for k in 0..4u32 {
                assert_eq!(tuple_count(&kn, k as usize).unwrap(), BigUint::from(n.pow(k + 1)));
            }
            let e = Graph::edgeless(n).unwrap();
            for k in 1..4 {
                assert_eq!(tuple_count(&e, k).unwrap(), BigUint::from(n));
            }
        }
        assert_eq!(tuple_count(&cycle4(), 1).unwrap(), BigUint::from(12u32));
    }

    #[test]
    fn surjections() {
        let s = surjection_counts(4);
        let expect: [u32; 5] = [0, 1, 14, 36, 24];
        assert_eq!(s, expect.map(BigUint::from));
    }

    #[test]
    fn metric_validation() {
        let bad = FiniteMetricSpace::new(2, vec![q(0, 1), q(1, 2), q(1, 3), q(0, 1)]);
        assert!(matches!(bad, Err(Error::InvalidMetric(_))));
        let neg = FiniteMetricSpace::new(2, vec![q(0, 1), q(-1, 2), q(-1, 2), q(0, 1)]);
        assert!(matches!(neg, Err(Error::InvalidMetric(_))));
        let diag = FiniteMetricSpace::new(1, vec![q(1, 2)]);
        assert!(matches!(diag, Err(Error::InvalidMetric(_))));
        assert!(Threshold::closed(q(-1, 4)).is_err());
    }

    #[test]
    fn threshold_modes() {
        let m = FiniteMetricSpace::new(2, vec![q(0, 1), q(1, 4), q(1, 4), q(0, 1)]).unwrap();
        assert_eq!(relation_from_metric(&m, &Threshold::closed(q(1, 4)).unwrap()).edge_count(), 1);
        assert_eq!(relation_from_metric(&m, &Threshold::open(q(1, 4)).unwrap()).edge_count(), 0);
    }

    #[test]
    fn max_metric_examples() {
        let pt = FiniteMetricSpace::new(1, vec![q(0, 1)]).unwrap();
        assert_eq!(max_metric_product(&pt, &pt).unwrap(), pt);

        let a = FiniteMetricSpace::new(2, vec![q(0, 1), q(1, 4), q(1, 4), q(0, 1)]).unwrap();
        let b = FiniteMetricSpace::new(2, vec![q(0, 1), q(1, 2), q(1, 2), q(0, 1)]).unwrap();
        let p = max_metric_product(&a, &b).unwrap();
        // (0,0) -> index 0, (1,1) -> index 3
        assert_eq!(*p.dist(0, 3), q(1, 2));
        assert_eq!(*p.dist(0, 2), q(1, 4));
    }
}
