//! Builds a triangle whose squared-distance locus is a prescribed canonical
//! ellipse.
//!
//! The construction is an isosceles triangle symmetric about the minor axis:
//! apex height parameter `a = sqrt(beta^2 / 2)`, half-base
//! `b = sqrt((alpha^2 - a^2) / 3)`, translated downward so the ellipse center
//! lands at the origin. The matching level constant follows in closed form.

use crate::error::{Error, Result};
use crate::geom::{Point2, Triangle};

/// The axis-aligned ellipse `x^2/alpha2 + y^2/beta2 = 1` with
/// `alpha2 >= beta2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseCanonical {
    alpha2: f64,
    beta2: f64,
}

impl EllipseCanonical {
    pub fn new(alpha2: f64, beta2: f64) -> Result<Self> {
        if !alpha2.is_finite() || !beta2.is_finite() || beta2 <= 0.0 {
            return Err(Error::NonPositiveParameter("beta2"));
        }
        if alpha2 < beta2 {
            return Err(Error::DegenerateInput("canonical ellipse needs alpha2 >= beta2"));
        }
        Ok(Self { alpha2, beta2 })
    }

    pub fn alpha2(&self) -> f64 {
        self.alpha2
    }

    pub fn beta2(&self) -> f64 {
        self.beta2
    }

    pub fn semi_major(&self) -> f64 {
        self.alpha2.sqrt()
    }

    pub fn semi_minor(&self) -> f64 {
        self.beta2.sqrt()
    }
}

/// Parameters of the synthesized isosceles triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsoscelesParams {
    /// Apex height above the base line, before the downward shift.
    pub a: f64,
    /// Half-base.
    pub b: f64,
    /// Squared-distance level realized by the ellipse.
    pub k: f64,
    /// Downward translation `2 a b^2 / (a^2 + 3 b^2)` that centers the locus
    /// at the origin.
    pub vertical_shift: f64,
}

/// The level constant `k = 2 a^2 (a^4 + 7 a^2 b^2 + 10 b^4) /
/// ((a^2 + b^2)(a^2 + 3 b^2))` for the isosceles triangle with apex height
/// `a` and half-base `b`.
pub fn k_constant(a: f64, b: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::NonPositiveParameter("a"));
    }
    if !b.is_finite() || b <= 0.0 {
        return Err(Error::NonPositiveParameter("b"));
    }
    let a2 = a * a;
    let b2 = b * b;
    Ok(2.0 * a2 * (a2 * a2 + 7.0 * a2 * b2 + 10.0 * b2 * b2) / ((a2 + b2) * (a2 + 3.0 * b2)))
}

/// The isosceles triangle and level constant whose squared-distance locus is
/// exactly the given canonical ellipse centered at the origin.
///
/// Vertices are returned apex first: `(0, a - s)`, `(-b, -s)`, `(b, -s)`
/// with `s` the vertical shift. For `alpha2 == beta2` the construction
/// degenerates smoothly to the equilateral triangle and the locus is a
/// circle.
pub fn triangle_for_ellipse(e: &EllipseCanonical) -> (IsoscelesParams, Triangle) {
    let a = (e.beta2() / 2.0).sqrt();
    let b = ((e.alpha2() - a * a) / 3.0).sqrt();
    let k = k_constant(a, b).expect("canonical ellipse implies positive parameters");
    let shift = 2.0 * a * b * b / (a * a + 3.0 * b * b);
    let tri = Triangle::new(
        Point2::new(0.0, a - shift),
        Point2::new(-b, -shift),
        Point2::new(b, -shift),
    )
    .expect("synthesized triangle is non-degenerate");
    (IsoscelesParams { a, b, k, vertical_shift: shift }, tri)
}

/// True when the squared-distance locus of `tri` is a circle, which happens
/// exactly for equilateral triangles (`a = sqrt(3) b` in the isosceles
/// parametrization).
pub fn is_circle_case(tri: &Triangle) -> bool {
    tri.is_equilateral(1e-9)
}
