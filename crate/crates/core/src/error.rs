use thiserror::Error;

/// Errors reported by construction and query operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input cannot form a valid shape (collinear, repeated, or non-finite vertices).
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    /// Vertex list describes a non-convex polygon.
    #[error("polygon is not convex")]
    NotConvex,
    /// Sample points lie on a common line where a plane-spanning set is required.
    #[error("sample points are collinear")]
    CollinearSamples,
    /// A sample point lies outside the polygon.
    #[error("point lies outside the polygon")]
    PointOutside,
    /// Witness points are not contained in any candidate triangle.
    #[error("witness points lie outside both candidate triangles")]
    WitnessOutside,
    /// A parameter that must be strictly positive was zero, negative, or non-finite.
    #[error("parameter {0} must be strictly positive")]
    NonPositiveParameter(&'static str),
    /// Conic does not have a positive-definite quadratic part.
    #[error("conic is not definite (discriminant must be negative)")]
    NotDefinite,
    /// Query point lies outside the sampled grid.
    #[error("point lies outside the sampled grid")]
    PointOutsideGrid,
}

pub type Result<T> = std::result::Result<T, Error>;
