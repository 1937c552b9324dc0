//! Finitely generated abelian groups in invariant-factor form.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k` with `2 ≤ d₁ | d₂ | … | d_k`.
///
/// The form is canonical, so `==` decides isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<BigUint>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// Canonicalises an arbitrary list of cyclic orders. Entries `0` count as
    /// free summands and entries `1` vanish.
    pub fn new<I, T>(rank: usize, cyclic: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut rank = rank;
        let mut orders = Vec::new();
        for d in cyclic {
            let d = d.into();
            if d.is_zero() {
                rank += 1;
            } else if !d.is_one() {
                orders.push(d);
            }
        }
        Self { rank, torsion: invariant_factors(orders) }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

/// `ℤ/a ⊕ ℤ/b ≅ ℤ/gcd ⊕ ℤ/lcm`, applied pairwise until the list is a
/// divisibility chain. Never factors anything.
fn invariant_factors(mut d: Vec<BigUint>) -> Vec<BigUint> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d.retain(|x| !x.is_one());
    d
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            let s = if first { "" } else { " ⊕ " };
            first = false;
            f.write_str(s)
        };
        match self.rank {
            0 => {}
            1 => {
                sep(f)?;
                f.write_str("ℤ")?;
            }
            r => {
                sep(f)?;
                write!(f, "ℤ^{r}")?;
            }
        }
        for d in &self.torsion {
            sep(f)?;
            write!(f, "ℤ/{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `A ⊗ B`: `ℤ ⊗ B = B`, `ℤ/m ⊗ ℤ/n = ℤ/gcd(m,n)`, extended bilinearly.
pub fn tensor_groups(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut cyclic: Vec<BigUint> = Vec::new();
    for _ in 0..a.rank {
        cyclic.extend(b.torsion.iter().cloned());
    }
    for _ in 0..b.rank {
        cyclic.extend(a.torsion.iter().cloned());
    }
    for m in &a.torsion {
        cyclic.extend(b.torsion.iter().map(|n| m.gcd(n)));
    }
    FgAbelianGroup::new(a.rank * b.rank, cyclic)
}

/// `Tor₁(A, B)`: free summands contribute nothing and
/// `Tor(ℤ/m, ℤ/n) = ℤ/gcd(m,n)`.
pub fn tor_groups(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let cyclic = a.torsion.iter().flat_map(|m| b.torsion.iter().map(move |n| m.gcd(n)));
    FgAbelianGroup::new(0, cyclic.collect::<Vec<_>>())
}

pub fn direct_sum<'a, I>(groups: I) -> FgAbelianGroup
where
    I: IntoIterator<Item = &'a FgAbelianGroup>,
{
    let mut rank = 0;
    let mut cyclic = Vec::new();
    for g in groups {
        rank += g.rank;
        cyclic.extend(g.torsion.iter().cloned());
    }
    FgAbelianGroup::new(rank, cyclic)
}

pub fn groups_isomorphic(a: &FgAbelianGroup, b: &FgAbelianGroup) -> bool {
    a == b
}
