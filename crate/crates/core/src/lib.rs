//! Exact Vietoris-Rips (flag complex) homology of finite relations and
//! degree-by-degree verification of the Künneth short exact sequences for
//! strong graph products, max-metric products and tensor products of chain
//! complexes.
//!
//! A semi-uniform structure on a finite carrier is represented by its
//! maximal generating relation. For a graph that relation is `E ∪ Δ`. For a
//! finite metric space the filter generated by `U_{r+ε}` stabilises: the set
//! of distances is finite, so `U_{r+ε} = U_{≤r}` for every small enough
//! `ε > 0` and all inverse/direct limits collapse to a single term. Every
//! space handled here is therefore a [`Graph`] and its Vietoris-Rips
//! homology is the homology of the flag complex of that graph.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, timing and
//! the command-line driver live in the `rips-kunneth` companion crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chain;
pub mod error;
pub mod flag;
pub mod group;
pub mod homology;
pub mod kunneth;
pub mod matrix;
pub mod relation;
pub mod snf;
pub mod spaces;

pub use chain::{tensor_chain_complex, AbstractChainComplex};
pub use error::{Error, Result};
pub use flag::{build_flag_complex, FlagComplex, Limits};
pub use group::{direct_sum, groups_isomorphic, tensor_groups, tor_groups, FgAbelianGroup};
pub use homology::{cohomology_at, homology_at, Coefficients, GradedGroups};
pub use kunneth::{
    predict_cohomology, predict_homology, torus_closed_form, verify_algebraic,
    verify_cohomology_product, verify_graph_product, KunnethReport,
};
pub use matrix::SparseIntMatrix;
pub use relation::{
    max_metric_product, relation_equals, relation_from_metric, strong_product, tuple_count,
    FiniteMetricSpace, Graph, Threshold, ThresholdMode,
};
pub use snf::{smith_normal_form, smith_normal_form_with_transforms, SmithForm};
