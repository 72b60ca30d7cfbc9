//! Crate-wide error type.

use crate::arrangement::Hyperplane;

/// Everything that can go wrong across the crate, from parsing to resource
/// guards. Exact arithmetic never approximates: when a computation cannot be
/// completed exactly it fails with one of these.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("variable index {index} out of range ({nvars} variables)")]
    VarIndex { index: usize, nvars: usize },

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("zero covector")]
    ZeroCovector,

    /// `line` 0 means the input has no line structure (e.g. a flag value).
    #[error("{}", render_parse(*.line, .msg))]
    Parse { line: usize, msg: String },

    #[error("duplicate hyperplane {0}")]
    DuplicateHyperplane(String),

    #[error("degree guard exceeded: reached total degree {reached}, cap is {limit}")]
    DegreeGuard { limit: u32, reached: u32 },

    #[error("ideal is not homogeneous (generator {0})")]
    NotHomogeneous(String),

    #[error("ideal has no generators")]
    EmptyIdeal,

    #[error("requested degree in dimension {requested} but the scheme has dimension {found}")]
    DimensionExceeded { requested: usize, found: usize },

    #[error("degree coefficient {0} is not an integer")]
    NonIntegerDegree(String),

    #[error("irrational singular locus: {0}")]
    IrrationalLocus(String),

    #[error("positive-dimensional singular locus: {0}")]
    PositiveDimensional(String),

    #[error(
        "candidate hyperplanes must be supplied explicitly when the ambient dimension exceeds 3"
    )]
    CandidatesRequired,

    #[error("reconstruction failed: {}", .0.reason)]
    ReconstructionFailed(Box<FailedReconstruction>),

    #[error("resource limit: {0}")]
    Resource(String),
}

fn render_parse(line: usize, msg: &str) -> String {
    if line == 0 {
        msg.to_string()
    } else {
        format!("line {line}: {msg}")
    }
}

/// Diagnostics attached to a failed reconstruction: what was inferred, how
/// every candidate scored, and which were accepted before the failure.
#[derive(Debug, Clone)]
pub struct FailedReconstruction {
    pub inferred_n: usize,
    pub candidates: Vec<(Hyperplane, i64)>,
    pub accepted: Vec<Hyperplane>,
    pub certificate: Option<bool>,
    pub reason: String,
}

pub type Result<T> = std::result::Result<T, Error>;
