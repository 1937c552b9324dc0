//! Künneth predictions and their degree-by-degree verification.
//!
//! For a product built from two factors the homology Künneth sequence
//!
//! ```text
//! 0 → ⊕_{i+j=q} H_i(X) ⊗ H_j(Y) → H_q(X × Y) → ⊕_{i+j=q-1} Tor(H_i(X), H_j(Y)) → 0
//! ```
//!
//! splits, so `H_q(X × Y)` is isomorphic to the direct sum of the outer
//! terms. In cohomology the Tor term sits at `i + j = q + 1`. The verifier
//! compares isomorphism classes only; the maps in the sequence are not
//! materialised.
//!
//! Products are formed three ways: strong products of graphs (the maximal
//! relation of a product of two graph semi-uniform structures), thresholded
//! max-metric products (which give the same graph), and tensor products of
//! chain complexes.

use alloc::vec::Vec;

use crate::chain::{tensor_chain_complex, AbstractChainComplex};
use crate::error::{Error, Result};
use crate::flag::{build_flag_complex_partial, chain_complex, Limits};
use crate::group::{direct_sum, tensor_groups, tor_groups, FgAbelianGroup};
use crate::homology::{Coefficients, GradedGroups, HomologyCalculator};
use crate::relation::{strong_product, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub tensor_part: FgAbelianGroup,
    pub tor_part: FgAbelianGroup,
    pub total: FgAbelianGroup,
}

fn tensor_term(a: Option<FgAbelianGroup>, b: Option<FgAbelianGroup>) -> Option<FgAbelianGroup> {
    match (a, b) {
        (Some(a), Some(b)) => Some(tensor_groups(&a, &b)),
        (Some(z), None) | (None, Some(z)) if z.is_zero() => Some(FgAbelianGroup::zero()),
        _ => None,
    }
}

fn tor_term(a: Option<FgAbelianGroup>, b: Option<FgAbelianGroup>) -> Option<FgAbelianGroup> {
    match (a, b) {
        (Some(a), Some(b)) => Some(tor_groups(&a, &b)),
        (Some(f), None) | (None, Some(f)) if f.is_free() => Some(FgAbelianGroup::zero()),
        _ => None,
    }
}

fn predict(hx: &GradedGroups, hy: &GradedGroups, q: usize, tor_degree: Option<usize>) -> Result<Prediction> {
    let tensors = (0..=q)
        .map(|i| tensor_term(hx.get(i), hy.get(q - i)))
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::NotComputed(q))?;
    let tors = match tor_degree {
        Some(n) => (0..=n)
            .map(|i| tor_term(hx.get(i), hy.get(n - i)))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NotComputed(q))?,
        None => Vec::new(),
    };
    let tensor_part = direct_sum(&tensors);
    let tor_part = direct_sum(&tors);
    let total = direct_sum([&tensor_part, &tor_part]);
    Ok(Prediction { tensor_part, tor_part, total })
}

/// `⊕_{i+j=q} H_i ⊗ H_j ⊕ ⊕_{i+j=q-1} Tor(H_i, H_j)`.
pub fn predict_homology(hx: &GradedGroups, hy: &GradedGroups, q: usize) -> Result<Prediction> {
    predict(hx, hy, q, q.checked_sub(1))
}

/// `⊕_{i+j=q} H^i ⊗ H^j ⊕ ⊕_{i+j=q+1} Tor(H^i, H^j)`.
pub fn predict_cohomology(hx: &GradedGroups, hy: &GradedGroups, q: usize) -> Result<Prediction> {
    predict(hx, hy, q, Some(q + 1))
}

/// Vietoris-Rips cohomology of the torus `S¹ × S¹` whose circle factors sit
/// at scales with homotopy types `S^{2l+1}` and `S^{2l'+1}`.
pub fn torus_closed_form(l: usize, l_prime: usize, q: usize) -> FgAbelianGroup {
    let (a, b) = (2 * l + 1, 2 * l_prime + 1);
    if l == l_prime {
        match q {
            0 => FgAbelianGroup::free(1),
            _ if q == a => FgAbelianGroup::free(2),
            _ if q == 2 * a => FgAbelianGroup::free(1),
            _ => FgAbelianGroup::zero(),
        }
    } else if q == 0 || q == a || q == b || q == a + b {
        FgAbelianGroup::free(1)
    } else {
        FgAbelianGroup::zero()
    }
}

/// Monotonic microsecond clock used to time each degree. `()` is a clock
/// that always reads zero.
pub trait Clock {
    fn micros(&self) -> u64;
}

impl Clock for () {
    fn micros(&self) -> u64 {
        0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theory {
    Homology,
    Cohomology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Flag complex of the strong product of two graphs.
    GraphProduct,
    /// Tensor product of two chain complexes.
    Algebraic,
    /// A product complex supplied by the caller.
    Supplied,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PredictionSource {
    /// Factor groups computed here from the factor complexes.
    Computed,
    /// Factor groups supplied by the caller and trusted.
    Supplied,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub q: usize,
    /// `None`: beyond the dimension cap.
    pub computed: Option<FgAbelianGroup>,
    /// `None`: a factor group it needs is beyond the cap.
    pub predicted: Option<Prediction>,
    pub micros: u64,
}

impl DegreeComparison {
    /// `Some` only when both sides were computed.
    pub fn matches(&self) -> Option<bool> {
        Some(self.computed.as_ref()? == &self.predicted.as_ref()?.total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunnethReport {
    pub theory: Theory,
    pub construction: Construction,
    pub coefficients: Coefficients,
    pub max_q: usize,
    /// Top simplex / chain degree built for the product.
    pub dimension_cap: usize,
    pub prediction_source: PredictionSource,
    pub factor_dims: [Vec<usize>; 2],
    pub product_dims: Vec<usize>,
    pub factor_groups: [GradedGroups; 2],
    /// `∂∘∂ = 0` held for the product complex.
    pub complex_valid: bool,
    /// Some complex was cut short by a resource cap.
    pub resource_limited: bool,
    pub degrees: Vec<DegreeComparison>,
}

impl KunnethReport {
    /// True iff the product complex is valid and every degree where both
    /// sides were computed agrees.
    pub fn all_match(&self) -> bool {
        self.complex_valid && self.degrees.iter().all(|d| d.matches() != Some(false))
    }

    pub fn mismatched_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.degrees.iter().filter(|d| d.matches() == Some(false)).map(|d| d.q)
    }

    pub fn computed(&self, q: usize) -> Option<&FgAbelianGroup> {
        self.degrees.get(q)?.computed.as_ref()
    }
}

/// Runs Künneth comparisons with a given cap, coefficient ring and clock.
pub struct KunnethVerifier<'c> {
    pub max_q: usize,
    pub coefficients: Coefficients,
    pub theory: Theory,
    pub limits: Limits,
    clock: &'c dyn Clock,
}

impl<'c> KunnethVerifier<'c> {
    pub fn new(max_q: usize, coefficients: Coefficients, theory: Theory) -> Self {
        Self { max_q, coefficients, theory, limits: Limits::default(), clock: &() }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn with_clock(mut self, clock: &'c dyn Clock) -> Self {
        self.clock = clock;
        self
    }

    /// Factor groups in degrees `0..=max_q` for this verifier's theory and ring.
    pub fn graded_groups(&self, c: &AbstractChainComplex) -> Result<GradedGroups> {
        let mut calc = HomologyCalculator::new(c, self.coefficients);
        match self.theory {
            Theory::Homology => calc.graded_homology(self.max_q),
            Theory::Cohomology => calc.graded_cohomology(self.max_q),
        }
    }

    /// Flag complex of `G ⊠ H` against the factor flag complexes.
    pub fn verify_graph_product(&self, g: &Graph, h: &Graph) -> Result<KunnethReport> {
        let cap = self.max_q + 1;
        let product = strong_product(g, h)?;
        let kg = build_flag_complex_partial(g, cap, &self.limits)?;
        let kh = build_flag_complex_partial(h, cap, &self.limits)?;
        let kp = build_flag_complex_partial(&product, cap, &self.limits)?;
        let limited = kg.hit_limit() || kh.hit_limit() || kp.hit_limit();
        let (cg, ch, cp) = (chain_complex(&kg), chain_complex(&kh), chain_complex(&kp));
        let factors = [self.graded_groups(&cg)?, self.graded_groups(&ch)?];
        let mut report = self.compare(&cp, factors, PredictionSource::Computed, Construction::GraphProduct)?;
        report.factor_dims = [kg.f_vector(), kh.f_vector()];
        report.resource_limited |= limited;
        Ok(report)
    }

    /// Tensor product `A ⊗ B` against the factor complexes.
    pub fn verify_algebraic(&self, a: &AbstractChainComplex, b: &AbstractChainComplex) -> Result<KunnethReport> {
        let t = tensor_chain_complex(a, b, self.max_q + 1, &self.limits)?;
        let factors = [self.graded_groups(a)?, self.graded_groups(b)?];
        let mut report = self.compare(&t, factors, PredictionSource::Computed, Construction::Algebraic)?;
        report.factor_dims = [a.dims().to_vec(), b.dims().to_vec()];
        Ok(report)
    }

    /// Compares an arbitrary product complex with predictions from factor
    /// groups given by the caller.
    pub fn verify_against(
        &self,
        product: &AbstractChainComplex,
        factors: [GradedGroups; 2],
        source: PredictionSource,
    ) -> Result<KunnethReport> {
        self.compare(product, factors, source, Construction::Supplied)
    }

    fn compare(
        &self,
        product: &AbstractChainComplex,
        factors: [GradedGroups; 2],
        source: PredictionSource,
        construction: Construction,
    ) -> Result<KunnethReport> {
        let mut complex_valid = match product.check_boundaries_compose() {
            Ok(()) => true,
            Err(Error::NotAComplex(_)) => false,
            Err(e) => return Err(e),
        };
        let mut calc = HomologyCalculator::new(product, self.coefficients);
        let mut degrees = Vec::with_capacity(self.max_q + 1);
        for q in 0..=self.max_q {
            let start = self.clock.micros();
            let computed = match self.theory {
                Theory::Homology => calc.homology(q),
                Theory::Cohomology => calc.cohomology(q),
            };
            let computed = match computed {
                Ok(g) => Some(g),
                Err(Error::NotComputed(_)) => None,
                Err(Error::NotAComplex(_)) => {
                    complex_valid = false;
                    None
                }
                Err(e) => return Err(e),
            };
            let predicted = match self.theory {
                Theory::Homology => predict_homology(&factors[0], &factors[1], q),
                Theory::Cohomology => predict_cohomology(&factors[0], &factors[1], q),
            }
            .ok();
            let micros = self.clock.micros().saturating_sub(start);
            degrees.push(DegreeComparison { q, computed, predicted, micros });
        }
        Ok(KunnethReport {
            theory: self.theory,
            construction,
            coefficients: self.coefficients,
            max_q: self.max_q,
            dimension_cap: product.dims().len().saturating_sub(1),
            prediction_source: source,
            factor_dims: [Vec::new(), Vec::new()],
            product_dims: product.dims().to_vec(),
            factor_groups: factors,
            complex_valid,
            resource_limited: false,
            degrees,
        })
    }
}

pub fn verify_graph_product(g: &Graph, h: &Graph, max_q: usize, coeff: Coefficients) -> Result<KunnethReport> {
    KunnethVerifier::new(max_q, coeff, Theory::Homology).verify_graph_product(g, h)
}

pub fn verify_cohomology_product(g: &Graph, h: &Graph, max_q: usize, coeff: Coefficients) -> Result<KunnethReport> {
    KunnethVerifier::new(max_q, coeff, Theory::Cohomology).verify_graph_product(g, h)
}

pub fn verify_algebraic(
    a: &AbstractChainComplex,
    b: &AbstractChainComplex,
    max_q: usize,
    coeff: Coefficients,
) -> Result<KunnethReport> {
    KunnethVerifier::new(max_q, coeff, Theory::Homology).verify_algebraic(a, b)
}
