//! Error types shared across the solver pipeline.

use thiserror::Error;

/// Everything that can go wrong while building geometry, solving the
/// potential problem, or driving a run. Each variant names the operation
/// that failed and carries enough context to locate the offending entity.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polygonal curve needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("polygonal curve must be oriented anti-clockwise (signed area {0})")]
    NotAntiClockwise(f64),

    #[error("edge {index} has degenerate length {length:e}")]
    DegenerateEdge { index: usize, length: f64 },

    #[error("adjacent edges fold back at vertex {index} (|cos(phi/2)| = {cos_half:e})")]
    Cusp { index: usize, cos_half: f64 },

    #[error("singular point {index} fell inside or on the boundary")]
    Placement { index: usize },

    #[error("matrix is singular to working precision (pivot {pivot:e} at column {column})")]
    SingularMatrix { column: usize, pivot: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("potential evaluated within {0:e} of a source point")]
    EvaluationAtSingularity(f64),

    #[error("no Monte Carlo sample landed inside the domain (M = {m})")]
    EmptyInterior { m: usize },

    #[error("initial curve spec: {0}")]
    Spec(String),

    #[error("config parse: {0}")]
    Parse(String),

    #[error("config validation: {0}")]
    Validation(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
