use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph must have at least one vertex")]
    EmptyVertexSet,

    #[error("relation is not symmetric: ({0}, {1}) present without its reverse")]
    Asymmetric(usize, usize),

    #[error("vertex count mismatch: {0} vs {1}")]
    VertexCountMismatch(usize, usize),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("degree {q} out of range (valid: {min}..={max})")]
    DegreeOutOfRange { q: usize, min: usize, max: usize },

    /// The group in this degree lies beyond the dimension cap. This is not the
    /// same thing as the zero group.
    #[error("degree {0} was not computed (beyond the dimension cap)")]
    NotComputed(usize),

    #[error("boundary maps do not compose to zero in degree {0}")]
    NotAComplex(usize),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("construction self-check failed: {0}")]
    SelfCheck(String),
}
