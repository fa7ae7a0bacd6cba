//! Squared-distance sums of triangles and their conic level sets.
//!
//! The sum of squared distances to the three side lines of a triangle is a
//! quadratic form that is positive definite everywhere in the plane (squares
//! erase the interior-sign convention), so each level set is an ellipse, a
//! point, or empty.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{ParamLine, Point2, Triangle, Vec2};

/// `Q(P) = P^T M P + L . P + c0`, equal to the sum of the squared side
/// distances at every point of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticDistanceSum {
    // Symmetric quadratic part M = [[xx, xy], [xy, yy]].
    xx: f64,
    xy: f64,
    yy: f64,
    linear: Vec2,
    constant: f64,
}

impl QuadraticDistanceSum {
    pub fn value(&self, p: Point2) -> f64 {
        self.xx * p.x * p.x
            + 2.0 * self.xy * p.x * p.y
            + self.yy * p.y * p.y
            + self.linear.dot(p.to_vec())
            + self.constant
    }

    /// The unique minimizer of the form (M is positive definite).
    pub fn minimizer(&self) -> Point2 {
        let det = self.xx * self.yy - self.xy * self.xy;
        let rx = -0.5 * self.linear.x;
        let ry = -0.5 * self.linear.y;
        Point2::new(
            (rx * self.yy - self.xy * ry) / det,
            (self.xx * ry - rx * self.xy) / det,
        )
    }

    pub fn min_value(&self) -> f64 {
        self.value(self.minimizer())
    }
}

/// Coefficients of the general conic `A x^2 + B xy + C y^2 + D x + E y + F = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl ConicCoefficients {
    pub fn discriminant(&self) -> f64 {
        self.b * self.b - 4.0 * self.a * self.c
    }

    pub fn value_at(&self, p: Point2) -> f64 {
        self.a * p.x * p.x
            + self.b * p.x * p.y
            + self.c * p.y * p.y
            + self.d * p.x
            + self.e * p.y
            + self.f
    }

    /// Rescales so that `A + C = 1`, which is well defined whenever the
    /// quadratic-part trace is positive (always true for distance loci).
    pub fn canonicalized(&self) -> ConicCoefficients {
        let trace = self.a + self.c;
        if trace <= 0.0 {
            return *self;
        }
        ConicCoefficients {
            a: self.a / trace,
            b: self.b / trace,
            c: self.c / trace,
            d: self.d / trace,
            e: self.e / trace,
            f: self.f / trace,
        }
    }
}

/// Classified shape of a definite conic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicClass {
    Ellipse,
    Circle,
    /// The level equals the minimum of the quadratic form.
    Point,
    /// The level lies below the minimum.
    Empty,
}

/// Center-form geometry of a definite conic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConicGeometry {
    pub class: ConicClass,
    pub center: Point2,
    pub semi_major: f64,
    pub semi_minor: f64,
    /// Angle of the major axis, in `[0, pi)`; zero for circles and points.
    pub rotation: f64,
}

impl ConicGeometry {
    /// Point of the parametrized conic at angle `theta`.
    pub fn point_at(&self, theta: f64) -> Point2 {
        let (sin_r, cos_r) = self.rotation.sin_cos();
        let u = self.semi_major * theta.cos();
        let v = self.semi_minor * theta.sin();
        Point2::new(
            self.center.x + u * cos_r - v * sin_r,
            self.center.y + u * sin_r + v * cos_r,
        )
    }
}

/// The quadratic form summing the squared distances to the three side lines.
pub fn squared_distance_sum(tri: &Triangle) -> QuadraticDistanceSum {
    let mut xx = 0.0;
    let mut xy = 0.0;
    let mut yy = 0.0;
    let mut linear = Vec2::default();
    let mut constant = 0.0;
    for side in tri.polygon().sides() {
        let n = side.normal();
        let o = side.offset();
        xx += n.x * n.x;
        xy += n.x * n.y;
        yy += n.y * n.y;
        linear = linear - n * (2.0 * o);
        constant += o * o;
    }
    QuadraticDistanceSum { xx, xy, yy, linear, constant }
}

/// Coefficients of the level set `Q(P) = k`, canonically scaled so that
/// `A + C = 1`.
pub fn locus_conic(tri: &Triangle, k: f64) -> ConicCoefficients {
    let q = squared_distance_sum(tri);
    ConicCoefficients {
        a: q.xx,
        b: 2.0 * q.xy,
        c: q.yy,
        d: q.linear.x,
        e: q.linear.y,
        f: q.constant - k,
    }
    .canonicalized()
}

// Absolute tolerance on the centered constant term that separates the
// point/empty cases from a proper ellipse.
const POINT_TOL: f64 = 1e-12;
// Relative semi-axis gap below which the ellipse is reported as a circle.
const CIRCLE_REL_TOL: f64 = 1e-9;

/// Extracts center, semi-axes, and rotation from a definite conic.
///
/// The center solves the 2x2 gradient system; the axes come from the closed
/// form eigendecomposition of the quadratic part and the conic value at the
/// center.
pub fn classify(conic: &ConicCoefficients) -> Result<ConicGeometry> {
    let disc = conic.discriminant();
    if !disc.is_finite() || disc >= 0.0 || conic.a <= 0.0 {
        return Err(Error::NotDefinite);
    }
    let half_b = 0.5 * conic.b;
    let det = conic.a * conic.c - half_b * half_b;
    let rx = -0.5 * conic.d;
    let ry = -0.5 * conic.e;
    let center = Point2::new(
        (rx * conic.c - half_b * ry) / det,
        (conic.a * ry - rx * half_b) / det,
    );
    let centered_f = conic.value_at(center);
    // Cancellation in value_at grows with the term magnitudes, so the
    // point/empty cutoff scales with them.
    let condition = conic.a.abs() * center.x * center.x
        + conic.b.abs() * (center.x * center.y).abs()
        + conic.c.abs() * center.y * center.y
        + (conic.d * center.x).abs()
        + (conic.e * center.y).abs()
        + conic.f.abs();
    let point_tol = POINT_TOL * condition.max(1.0);

    if centered_f > point_tol {
        return Ok(ConicGeometry {
            class: ConicClass::Empty,
            center,
            semi_major: 0.0,
            semi_minor: 0.0,
            rotation: 0.0,
        });
    }
    if centered_f >= -point_tol {
        return Ok(ConicGeometry {
            class: ConicClass::Point,
            center,
            semi_major: 0.0,
            semi_minor: 0.0,
            rotation: 0.0,
        });
    }

    let mean = 0.5 * (conic.a + conic.c);
    let spread = (0.25 * (conic.a - conic.c) * (conic.a - conic.c) + half_b * half_b).sqrt();
    let lambda_min = mean - spread;
    let lambda_max = mean + spread;
    let semi_major = (-centered_f / lambda_min).sqrt();
    let semi_minor = (-centered_f / lambda_max).sqrt();

    let class = if (semi_major - semi_minor).abs() <= CIRCLE_REL_TOL * semi_major {
        ConicClass::Circle
    } else {
        ConicClass::Ellipse
    };
    let rotation = if class == ConicClass::Circle {
        0.0
    } else {
        major_axis_angle(conic.a, half_b, conic.c, lambda_min)
    };

    Ok(ConicGeometry { class, center, semi_major, semi_minor, rotation })
}

// Angle of the eigenvector for the smaller eigenvalue, reduced to [0, pi).
fn major_axis_angle(a: f64, half_b: f64, c: f64, lambda_min: f64) -> f64 {
    let candidate = Vec2::new(half_b, lambda_min - a);
    let v = if candidate.norm() > 1e-14 * (a.abs() + c.abs()) {
        candidate
    } else {
        Vec2::new(lambda_min - c, half_b)
    };
    if v.norm() == 0.0 {
        return 0.0;
    }
    let mut angle = v.y.atan2(v.x);
    angle = angle.rem_euclid(PI);
    if angle >= PI - 1e-15 {
        angle = 0.0;
    }
    angle
}

/// Points where an infinite line meets the conic: two crossings, one
/// tangency (parameter discriminant within 1e-9 of zero), or none. Results
/// are ordered along the line direction.
pub fn intersect_line_conic(conic: &ConicCoefficients, line: &ParamLine) -> Vec<Point2> {
    let Some(dir) = line.direction.normalized() else {
        return Vec::new();
    };
    let p = line.point;
    let qa = conic.a * dir.x * dir.x + conic.b * dir.x * dir.y + conic.c * dir.y * dir.y;
    let qb = 2.0 * conic.a * p.x * dir.x
        + conic.b * (p.x * dir.y + p.y * dir.x)
        + 2.0 * conic.c * p.y * dir.y
        + conic.d * dir.x
        + conic.e * dir.y;
    let qc = conic.value_at(p);

    if qa.abs() <= 1e-15 {
        // Degenerate direction (impossible for a definite conic).
        if qb.abs() <= 1e-15 {
            return Vec::new();
        }
        return vec![p + dir * (-qc / qb)];
    }

    // Normalized form t^2 + bt + c keeps the tangency test scale free.
    let bn = qb / qa;
    let cn = qc / qa;
    let disc = bn * bn - 4.0 * cn;
    if disc.abs() <= 1e-9 {
        return vec![p + dir * (-0.5 * bn)];
    }
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (bn + bn.signum() * disc.sqrt());
    let (t1, t2) = (q, cn / q);
    let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
    vec![p + dir * lo, p + dir * hi]
}
