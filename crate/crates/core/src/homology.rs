//! Homology and cohomology of finite chain complexes with coefficients in
//! ℤ, ℚ or 𝔽_p.
//!
//! Over ℤ, with `r_q = rank ∂_q`:
//! `H_q = ℤ^{dim C_q − r_q − r_{q+1}} ⊕ (torsion factors of ∂_{q+1})` and
//! `H^q` has the same rank with the torsion factors of `δ^{q−1} = ∂_qᵀ`.
//! Over a field only the ranks survive, computed in that field.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::chain::AbstractChainComplex;
use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;
use crate::matrix::SparseIntMatrix;
use crate::snf::{rank_mod_p, smith_normal_form};

/// Coefficient ring. Künneth comparisons always pair a ring with itself, so
/// the torsion product of the coefficient modules vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    /// 𝔽_p for a prime `p`; build with [`Coefficients::prime`].
    Prime(u32),
}

impl Coefficients {
    pub fn prime(p: u32) -> Result<Self> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if is_prime {
            Ok(Self::Prime(p))
        } else {
            Err(Error::InvalidParameter(format!("{p} is not prime")))
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, Self::Integers)
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integers => f.write_str("z"),
            Self::Rationals => f.write_str("q"),
            Self::Prime(p) => write!(f, "f{p}"),
        }
    }
}

/// A graded group known in degrees `0..len()`; above that it is either zero
/// (`complete`) or unknown.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedGroups {
    groups: Vec<FgAbelianGroup>,
    complete: bool,
}

impl GradedGroups {
    pub fn new(groups: Vec<FgAbelianGroup>, complete: bool) -> Self {
        Self { groups, complete }
    }

    /// Finitely supported graded group, zero beyond the listed degrees.
    pub fn finite(groups: Vec<FgAbelianGroup>) -> Self {
        Self::new(groups, true)
    }

    /// `ℤ` in degree 0.
    pub fn point() -> Self {
        Self::finite(alloc::vec![FgAbelianGroup::free(1)])
    }

    pub fn get(&self, q: usize) -> Option<FgAbelianGroup> {
        match self.groups.get(q) {
            Some(g) => Some(g.clone()),
            None if self.complete => Some(FgAbelianGroup::zero()),
            None => None,
        }
    }

    /// Number of explicitly stored degrees.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn iter(&self) -> impl Iterator<Item = &FgAbelianGroup> {
        self.groups.iter()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(FgAbelianGroup::rank).collect()
    }
}

/// Rank and torsion factors of one boundary map.
#[derive(Clone, Debug)]
struct MapData {
    rank: usize,
    torsion: Vec<BigUint>,
}

fn map_data(d: &SparseIntMatrix, coeff: Coefficients) -> MapData {
    match coeff {
        Coefficients::Prime(p) => MapData { rank: rank_mod_p(d, p), torsion: Vec::new() },
        Coefficients::Rationals => MapData { rank: smith_normal_form(d).rank(), torsion: Vec::new() },
        Coefficients::Integers => {
            let s = smith_normal_form(d);
            let torsion = s.torsion().map(|t| t.magnitude().clone()).collect();
            MapData { rank: s.rank(), torsion }
        }
    }
}

/// Computes (co)homology degree by degree, reducing each boundary map once.
pub struct HomologyCalculator<'a> {
    complex: &'a AbstractChainComplex,
    coeff: Coefficients,
    /// Keyed by `(q, transposed)`.
    cache: BTreeMap<(usize, bool), MapData>,
}

impl<'a> HomologyCalculator<'a> {
    pub fn new(complex: &'a AbstractChainComplex, coeff: Coefficients) -> Self {
        Self { complex, coeff, cache: BTreeMap::new() }
    }

    pub fn coefficients(&self) -> Coefficients {
        self.coeff
    }

    fn data(&mut self, q: usize, transposed: bool) -> MapData {
        let Some(d) = self.complex.boundary(q) else {
            return MapData { rank: 0, torsion: Vec::new() };
        };
        // Ranks agree for a matrix and its transpose; only ℤ torsion needs
        // the transposed reduction to be run separately.
        let key_transposed = transposed && self.coeff == Coefficients::Integers;
        if let Some(m) = self.cache.get(&(q, key_transposed)) {
            return m.clone();
        }
        let m = if key_transposed { map_data(&d.transpose(), self.coeff) } else { map_data(d, self.coeff) };
        self.cache.insert((q, key_transposed), m.clone());
        m
    }

    fn free_rank(&mut self, q: usize, transposed: bool) -> Result<usize> {
        if !self.complex.knows_boundary(q + 1) {
            return Err(Error::NotComputed(q));
        }
        let dim = self.complex.dim(q).ok_or(Error::NotComputed(q))?;
        let r_in = self.data(q, transposed).rank;
        let r_out = self.data(q + 1, transposed).rank;
        dim.checked_sub(r_in + r_out).ok_or(Error::NotAComplex(q))
    }

    pub fn homology(&mut self, q: usize) -> Result<FgAbelianGroup> {
        let rank = self.free_rank(q, false)?;
        let torsion = self.data(q + 1, false).torsion;
        Ok(FgAbelianGroup::new(rank, torsion))
    }

    pub fn cohomology(&mut self, q: usize) -> Result<FgAbelianGroup> {
        let rank = self.free_rank(q, true)?;
        let torsion = self.data(q, true).torsion;
        Ok(FgAbelianGroup::new(rank, torsion))
    }

    /// `H_0 … H_{max_q}`, stopping early at the first degree not computed.
    pub fn graded_homology(&mut self, max_q: usize) -> Result<GradedGroups> {
        self.graded(max_q, Self::homology)
    }

    pub fn graded_cohomology(&mut self, max_q: usize) -> Result<GradedGroups> {
        self.graded(max_q, Self::cohomology)
    }

    fn graded(&mut self, max_q: usize, f: fn(&mut Self, usize) -> Result<FgAbelianGroup>) -> Result<GradedGroups> {
        let mut groups = Vec::new();
        for q in 0..=max_q {
            match f(self, q) {
                Ok(g) => groups.push(g),
                Err(Error::NotComputed(_)) => return Ok(GradedGroups::new(groups, false)),
                Err(e) => return Err(e),
            }
        }
        let complete = !self.complex.is_truncated() && max_q + 1 >= self.complex.dims().len();
        Ok(GradedGroups::new(groups, complete))
    }
}

pub fn homology_at(c: &AbstractChainComplex, q: usize, coeff: Coefficients) -> Result<FgAbelianGroup> {
    HomologyCalculator::new(c, coeff).homology(q)
}

/// Homology of the cochain complex `δ^q = ∂_{q+1}ᵀ` at degree `q`.
pub fn cohomology_at(c: &AbstractChainComplex, q: usize, coeff: Coefficients) -> Result<FgAbelianGroup> {
    HomologyCalculator::new(c, coeff).cohomology(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{build_flag_complex, chain_complex, Limits};
    use crate::relation::Graph;
    use crate::spaces::{cycle, rp2_flag};

    fn complex(g: &Graph, cap: usize) -> AbstractChainComplex {
        chain_complex(&build_flag_complex(g, cap, &Limits::unbounded()).unwrap())
    }

    fn z(r: usize, t: &[u32]) -> FgAbelianGroup {
        FgAbelianGroup::new(r, t.iter().copied())
    }

    #[test]
    fn prime_validation() {
        assert_eq!(Coefficients::prime(7), Ok(Coefficients::Prime(7)));
        assert!(Coefficients::prime(1).is_err());
        assert!(Coefficients::prime(9).is_err());
    }

    #[test]
    fn cycle_is_a_circle() {
        let c = complex(&cycle(4).unwrap(), 3);
        let zz = Coefficients::Integers;
        assert_eq!(homology_at(&c, 0, zz).unwrap(), z(1, &[]));
        assert_eq!(homology_at(&c, 1, zz).unwrap(), z(1, &[]));
        assert_eq!(homology_at(&c, 2, zz).unwrap(), z(0, &[]));
        assert_eq!(cohomology_at(&c, 0, zz).unwrap(), z(1, &[]));
        assert_eq!(cohomology_at(&c, 1, zz).unwrap(), z(1, &[]));
    }

    #[test]
    fn simplices_are_acyclic() {
        for n in 1..=8 {
            let c = complex(&Graph::complete(n).unwrap(), n);
            let h = HomologyCalculator::new(&c, Coefficients::Integers).graded_homology(n).unwrap();
            assert_eq!(h.get(0), Some(z(1, &[])));
            assert!((1..=n).all(|q| h.get(q).unwrap().is_zero()), "K_{n}");
            assert!(h.is_complete());
        }
    }

    #[test]
    fn projective_plane() {
        let c = complex(&rp2_flag().unwrap(), 3);
        assert_eq!(c.dims(), [31, 90, 60]);
        let zz = Coefficients::Integers;
        assert_eq!(homology_at(&c, 0, zz).unwrap(), z(1, &[]));
        assert_eq!(homology_at(&c, 1, zz).unwrap(), z(0, &[2]));
        assert_eq!(homology_at(&c, 2, zz).unwrap(), z(0, &[]));
        assert_eq!(homology_at(&c, 2, Coefficients::Prime(2)).unwrap(), z(1, &[]));
        assert_eq!(homology_at(&c, 1, Coefficients::Prime(3)).unwrap(), z(0, &[]));

        assert_eq!(cohomology_at(&c, 0, zz).unwrap(), z(1, &[]));
        assert_eq!(cohomology_at(&c, 1, zz).unwrap(), z(0, &[]));
        assert_eq!(cohomology_at(&c, 2, zz).unwrap(), z(0, &[2]));
    }

    #[test]
    fn not_computed_is_not_zero() {
        let k5 = Graph::complete(5).unwrap();
        let c = complex(&k5, 2);
        assert!(c.is_truncated());
        assert!(homology_at(&c, 1, Coefficients::Integers).is_ok());
        assert_eq!(homology_at(&c, 2, Coefficients::Integers), Err(Error::NotComputed(2)));
        assert_eq!(cohomology_at(&c, 5, Coefficients::Integers), Err(Error::NotComputed(5)));
        let h = HomologyCalculator::new(&c, Coefficients::Integers).graded_homology(4).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.get(2), None);

        let full = complex(&k5, 6);
        assert!(homology_at(&full, 9, Coefficients::Integers).unwrap().is_zero());
    }

    #[test]
    fn rational_duality() {
        let c = complex(&rp2_flag().unwrap(), 3);
        for q in 0..3 {
            let h = homology_at(&c, q, Coefficients::Rationals).unwrap();
            let co = cohomology_at(&c, q, Coefficients::Rationals).unwrap();
            assert_eq!(h.rank(), co.rank());
            assert!(h.is_free() && co.is_free());
        }
    }
}
