//! Level-set geometry of distance sums over convex polygons.
//!
//! Three families of questions about a convex polygon (usually a triangle)
//! are answered in closed form and cross-checked by brute force:
//!
//! - **Linear**: the sum of distances from an interior point to all side
//!   lines is an affine functional, so each level set is a line segment
//!   (or the whole polygon when the functional is constant, which for
//!   triangles happens exactly in the equilateral case — Viviani's theorem).
//!   See [`linear`].
//! - **Quadratic**: for a triangle, the sum of *squared* side distances is a
//!   positive-definite quadratic form, so each level set is an ellipse; it
//!   is a circle exactly for equilateral triangles. See [`quadratic`].
//! - **Inverse**: any canonical ellipse arises this way — an isosceles
//!   triangle and a level constant can be synthesized for it in closed form.
//!   See [`inverse`].
//!
//! [`sampling`] rasterizes both field families directly from vertex data and
//! compares interpolated contour values against the closed-form loci.
//!
//! All types are immutable after construction and all operations are pure
//! functions, so everything is safe to share across threads.

mod error;
pub mod geom;
pub mod inverse;
pub mod linear;
pub mod quadratic;
pub mod sampling;

pub use error::{Error, Result};
pub use geom::{
    Bounds, ClippedLine, Containment, ConvexPolygon, OrientedLine, ParamLine, Point2, Triangle,
    Vec2, EPS_GEOM,
};
pub use inverse::{is_circle_case, k_constant, triangle_for_ellipse, EllipseCanonical, IsoscelesParams};
pub use linear::{
    distance_sum_functional, infer_constancy, level_segment, parallel_decomposition,
    reconstruct_equilateral_from_base, value_range, AffineDistanceSum, Constancy, Habitat,
    HabitatKind, EPS_VAL,
};
pub use quadratic::{
    classify, intersect_line_conic, locus_conic, squared_distance_sum, ConicClass,
    ConicCoefficients, ConicGeometry, QuadraticDistanceSum,
};
pub use sampling::{
    contour_residual, sample_linear_field, sample_quadratic_field,
    sample_quadratic_field_covering, FieldSample,
};
