//! Space recipes: a tagged description of one generator call or file.

use std::fmt;
use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rips_kunneth_core::spaces::{circle_metric, cycle, erdos_renyi, power_cycle, rp2_flag};
use rips_kunneth_core::{relation_from_metric, FiniteMetricSpace, Graph, Threshold};

use crate::formats::{format_rational, load_distance_matrix, load_edge_list, FormatError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceRecipe {
    Cycle(usize),
    Complete(usize),
    PowerCycle(usize, usize),
    /// `n` equally spaced points on the unit-circumference circle.
    Circle(usize),
    Rp2,
    /// Erdős–Rényi graph; the edge probability is kept exact for reporting.
    Random { n: usize, p: BigRational, seed: u64 },
    EdgeList(PathBuf),
    DistanceMatrix(PathBuf),
}

/// A realised recipe: graphs directly, metric spaces until thresholded.
#[derive(Clone, Debug)]
pub enum Space {
    Graph(Graph),
    Metric(FiniteMetricSpace),
}

impl SpaceRecipe {
    pub fn is_metric(&self) -> bool {
        matches!(self, Self::Circle(_) | Self::DistanceMatrix(_))
    }

    pub fn realize(&self) -> Result<Space, FormatError> {
        Ok(match self {
            Self::Cycle(n) => Space::Graph(cycle(*n)?),
            Self::Complete(n) => Space::Graph(Graph::complete(*n)?),
            Self::PowerCycle(n, k) => Space::Graph(power_cycle(*n, *k)?),
            Self::Circle(n) => Space::Metric(circle_metric(*n)?),
            Self::Rp2 => Space::Graph(rp2_flag()?),
            Self::Random { n, p, seed } => {
                // Exact p in [0, 1] is validated by the generator after conversion.
                let pf = p.to_f64().unwrap_or(f64::NAN);
                Space::Graph(erdos_renyi(*n, pf, *seed)?)
            }
            Self::EdgeList(path) => Space::Graph(load_edge_list(path)?),
            Self::DistanceMatrix(path) => Space::Metric(load_distance_matrix(path)?),
        })
    }

    /// Realises the recipe as a graph, thresholding metric recipes.
    pub fn graph(&self, threshold: Option<&Threshold>) -> Result<Graph, RecipeError> {
        match self.realize()? {
            Space::Graph(g) => Ok(g),
            Space::Metric(m) => match threshold {
                Some(t) => Ok(relation_from_metric(&m, t)),
                None => Err(RecipeError::NeedsThreshold(self.to_string())),
            },
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RecipeError {
    #[error("{0} is a metric space and needs --threshold")]
    NeedsThreshold(String),
    #[error(transparent)]
    Format(#[from] FormatError),
}

impl fmt::Display for SpaceRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cycle(n) => write!(f, "cycle {n}"),
            Self::Complete(n) => write!(f, "complete {n}"),
            Self::PowerCycle(n, k) => write!(f, "power_cycle {n} {k}"),
            Self::Circle(n) => write!(f, "circle {n}"),
            Self::Rp2 => f.write_str("rp2"),
            Self::Random { n, p, seed } => write!(f, "random {n} {} {seed}", format_rational(p)),
            Self::EdgeList(p) => write!(f, "edges {}", p.display()),
            Self::DistanceMatrix(p) => write!(f, "metric {}", p.display()),
        }
    }
}
