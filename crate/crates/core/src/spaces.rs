//! Generators for example spaces and test corpora.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::flag::{build_flag_complex, chain_complex, Limits};
use crate::group::FgAbelianGroup;
use crate::homology::{Coefficients, HomologyCalculator};
use crate::relation::{FiniteMetricSpace, Graph};

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n ≥ 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// `n` points on a circle, each joined to its `k` nearest neighbours on
/// either side: `i ~ j` iff the circular distance is at most `k`.
pub fn power_cycle(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || 2 * k >= n {
        return Err(Error::InvalidParameter(format!("power_cycle needs 1 ≤ k < n/2, got n={n} k={k}")));
    }
    let edges: Vec<_> = (0..n).flat_map(|i| (1..=k).map(move |s| (i, (i + s) % n))).collect();
    Graph::new(n, &edges)
}

/// `n` equally spaced points on a circle of circumference 1 with geodesic
/// distance `min(|i−j|, n−|i−j|) / n`.
pub fn circle_metric(n: usize) -> Result<FiniteMetricSpace> {
    let mut dist = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let k = i.abs_diff(j).min(n - i.abs_diff(j));
            dist.push(BigRational::new(BigInt::from(k), BigInt::from(n)));
        }
    }
    FiniteMetricSpace::new(n, dist)
}

/// The ten triangles of the six-vertex triangulation of the real
/// projective plane.
pub const RP2_TRIANGLES: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 1, 5],
    [1, 2, 4],
    [2, 3, 5],
    [1, 3, 4],
    [2, 4, 5],
    [1, 3, 5],
];

/// 1-skeleton of the barycentric subdivision of the six-vertex `RP²`.
/// Its flag complex is that subdivision: 31 vertices, 90 edges, 60
/// triangles.
///
/// The embedded triangle list is checked on every call: the flag complex
/// must have `H_0 = ℤ`, `H_1 = ℤ/2`, `H_2 = 0` and Euler characteristic 1.
pub fn rp2_flag() -> Result<Graph> {
    let tops: Vec<Vec<usize>> = RP2_TRIANGLES.iter().map(|t| t.to_vec()).collect();
    let g = barycentric_flag(&tops)?;
    let k = build_flag_complex(&g, 3, &Limits::unbounded())?;
    let c = chain_complex(&k);
    let h = HomologyCalculator::new(&c, Coefficients::Integers).graded_homology(3)?;
    let expected = [FgAbelianGroup::free(1), FgAbelianGroup::new(0, [2u32]), FgAbelianGroup::zero()];
    if c.is_truncated() || c.euler_characteristic() != 1 || h.iter().take(3).ne(expected.iter()) {
        return Err(Error::SelfCheck(format!(
            "projective plane: f-vector {:?}, homology {:?}",
            k.f_vector(),
            h.iter().collect::<Vec<_>>()
        )));
    }
    Ok(g)
}

/// Graph on all nonempty faces of the complex generated by `simplices`,
/// with an edge between two faces when one strictly contains the other.
///
/// Faces are numbered by dimension, then lexicographically by their sorted
/// vertex lists.
pub fn barycentric_flag(simplices: &[Vec<usize>]) -> Result<Graph> {
    let mut faces: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for s in simplices {
        let mut s = s.clone();
        s.sort_unstable();
        if s.is_empty() || s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter(format!("malformed simplex {s:?}")));
        }
        if s.len() > 20 {
            return Err(Error::ResourceLimit(format!("simplex with {} vertices", s.len())));
        }
        for mask in 1u32..(1 << s.len()) {
            let face: Vec<usize> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            faces.insert((face.len() - 1, face));
        }
    }
    let faces: Vec<Vec<usize>> = faces.into_iter().map(|(_, f)| f).collect();
    let contains = |big: &[usize], small: &[usize]| small.iter().all(|v| big.binary_search(v).is_ok());
    let mut edges = Vec::new();
    for (i, a) in faces.iter().enumerate() {
        for (j, b) in faces.iter().enumerate().skip(i + 1) {
            if b.len() > a.len() && contains(b, a) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(faces.len(), &edges)
}

/// `G(n, p)` drawn from ChaCha8 seeded with `seed`: for each pair `i < j` in
/// lexicographic order, one Bernoulli(`p`) draw decides the edge.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::{relation_equals, relation_from_metric, Threshold};
    use alloc::vec;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn cycles() {
        assert_eq!(cycle(4).unwrap().edge_count(), 4);
        assert_eq!(cycle(3).unwrap(), Graph::complete(3).unwrap());
        assert!((0..8).all(|v| cycle(8).unwrap().degree(v) == 2));
        assert!(cycle(2).is_err());
    }

    #[test]
    fn power_cycles() {
        assert_eq!(power_cycle(7, 1).unwrap(), cycle(7).unwrap());
        assert_eq!(power_cycle(5, 2).unwrap(), Graph::complete(5).unwrap());
        assert!(power_cycle(8, 4).is_err());
        assert!(power_cycle(8, 0).is_err());
    }

    #[test]
    fn circle_metrics() {
        let m = circle_metric(4).unwrap();
        assert_eq!(*m.dist(0, 1), q(1, 4));
        assert_eq!(*m.dist(0, 2), q(1, 2));
        assert_eq!(*circle_metric(2).unwrap().dist(0, 1), q(1, 2));

        // Distances are k/4, so only neighbours pass at 1/4.
        let g = relation_from_metric(&m, &Threshold::closed(q(1, 4)).unwrap());
        assert_eq!(g, cycle(4).unwrap());
        let g = relation_from_metric(&m, &Threshold::open(q(1, 4)).unwrap());
        assert_eq!(g.edge_count(), 0);
        let g = relation_from_metric(&m, &Threshold::closed(m.max_distance()).unwrap());
        assert_eq!(g, Graph::complete(4).unwrap());
    }

    #[test]
    fn power_cycle_is_a_circle_threshold() {
        for n in 3usize..12 {
            for k in 1..n.div_ceil(2) {
                let m = circle_metric(n).unwrap();
                let t = Threshold::closed(q(k as i64, n as i64)).unwrap();
                assert!(relation_equals(&power_cycle(n, k).unwrap(), &relation_from_metric(&m, &t)).unwrap());
            }
        }
    }

    #[test]
    fn projective_plane_fixture() {
        // Every edge of the 6-vertex triangulation lies in exactly two
        // triangles.
        let mut seen = BTreeSet::new();
        for t in RP2_TRIANGLES {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                let n = RP2_TRIANGLES.iter().filter(|s| s.contains(&a) && s.contains(&b)).count();
                assert_eq!(n, 2, "edge {a}{b}");
                seen.insert((a, b));
            }
        }
        assert_eq!(seen.len(), 15);

        let g = rp2_flag().unwrap();
        assert_eq!(g.vertex_count(), 31);
        assert_eq!(g.edge_count(), 90);
        let k = build_flag_complex(&g, 3, &Limits::unbounded()).unwrap();
        // Flags of the triangulation: vertex<edge 30, vertex<triangle 30,
        // edge<triangle 30; full chains 10 · 3! = 60.
        assert_eq!(k.f_vector(), [31, 90, 60]);
    }

    #[test]
    fn barycentric_examples() {
        let tri = barycentric_flag(&[vec![0, 1, 2]]).unwrap();
        assert_eq!((tri.vertex_count(), tri.edge_count()), (7, 12));
        let c = chain_complex(&build_flag_complex(&tri, 3, &Limits::unbounded()).unwrap());
        let h = HomologyCalculator::new(&c, Coefficients::Integers).graded_homology(3).unwrap();
        assert_eq!(h.ranks(), [1, 0, 0, 0]);

        // Boundary of a triangle: 3 vertices and 3 edges alternate in a hexagon.
        let hex = barycentric_flag(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        assert_eq!(hex.vertex_count(), 6);
        assert!((0..6).all(|v| hex.degree(v) == 2));
        let c = chain_complex(&build_flag_complex(&hex, 2, &Limits::unbounded()).unwrap());
        assert_eq!(c.dims(), [6, 6]);

        let tops: Vec<Vec<usize>> = RP2_TRIANGLES.iter().map(|t| t.to_vec()).collect();
        assert_eq!(barycentric_flag(&tops).unwrap(), rp2_flag().unwrap());

        assert!(barycentric_flag(&[vec![0, 0, 1]]).is_err());
        assert!(barycentric_flag(&[vec![]]).is_err());
    }

    #[test]
    fn random_graphs() {
        assert_eq!(erdos_renyi(7, 0.0, 3).unwrap().edge_count(), 0);
        assert_eq!(erdos_renyi(7, 1.0, 3).unwrap(), Graph::complete(7).unwrap());
        assert!(erdos_renyi(3, 1.5, 0).is_err());
        let g = erdos_renyi(6, 0.5, 42).unwrap();
        assert_eq!(g, erdos_renyi(6, 0.5, 42).unwrap());
        // Frozen from the first run of this generator.
        let frozen: Vec<(usize, usize)> = g.edges().collect();
        assert_eq!(frozen, FROZEN_6_HALF_42);
    }

    const FROZEN_6_HALF_42: &[(usize, usize)] = &[(0, 3), (0, 5), (1, 2), (1, 3), (2, 3)];
}
