//! Validated planar primitives: points, oriented lines, convex polygons, triangles.
//!
//! Sign convention used throughout the crate: every polygon side carries an
//! *outward* unit normal, so the signed distance to a side line is negative
//! for interior points and its absolute value is the Euclidean distance.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Default geometric tolerance, in input length units.
pub const EPS_GEOM: f64 = 1e-9;

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Position vector from the origin.
    pub fn to_vec(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2::new(x, y)
    }
}

impl Sub for Point2 {
    type Output = Vec2;
    fn sub(self, rhs: Point2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add<Vec2> for Point2 {
    type Output = Point2;
    fn add(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub<Vec2> for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// A displacement in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, rhs: Vec2) -> f64 {
        self.x * rhs.x + self.y * rhs.y
    }

    /// Z component of the 3D cross product; positive when `rhs` is
    /// counterclockwise from `self`.
    pub fn cross(self, rhs: Vec2) -> f64 {
        self.x * rhs.y - self.y * rhs.x
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// Unit vector in the same direction, or `None` for a near-zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        if n <= f64::EPSILON {
            None
        } else {
            Some(Vec2::new(self.x / n, self.y / n))
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// The line `{P : normal . P = offset}` with a unit normal.
///
/// When the line is a polygon side, the normal points outward, so
/// [`OrientedLine::signed_distance`] is negative on the interior side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedLine {
    normal: Vec2,
    offset: f64,
}

impl OrientedLine {
    /// Builds a line from a normal and offset. The normal must already be a
    /// unit vector within 1e-12.
    pub fn new(normal: Vec2, offset: f64) -> Result<Self> {
        if !normal.is_finite() || !offset.is_finite() {
            return Err(Error::DegenerateInput("non-finite line coefficients"));
        }
        if (normal.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::DegenerateInput("line normal is not unit length"));
        }
        Ok(Self { normal, offset })
    }

    /// Line through `a` and `b` whose normal is the clockwise quarter turn of
    /// the direction `b - a`. For a counterclockwise polygon boundary this is
    /// the outward normal.
    pub fn through(a: Point2, b: Point2) -> Result<Self> {
        let dir = (b - a)
            .normalized()
            .ok_or(Error::DegenerateInput("coincident line points"))?;
        let normal = -dir.perp();
        Ok(Self {
            normal,
            offset: normal.dot(a.to_vec()),
        })
    }

    pub fn normal(&self) -> Vec2 {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// `normal . p - offset`: negative on the interior side, zero on the
    /// line, with absolute value equal to the Euclidean distance.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.normal.dot(p.to_vec()) - self.offset
    }

    pub fn distance(&self, p: Point2) -> f64 {
        self.signed_distance(p).abs()
    }

    /// Foot of the perpendicular from `p` onto the line.
    pub fn project(&self, p: Point2) -> Point2 {
        p - self.normal * self.signed_distance(p)
    }
}

/// An infinite line given by a base point and a direction, used for clipping
/// and intersection queries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamLine {
    pub point: Point2,
    pub direction: Vec2,
}

impl ParamLine {
    pub fn new(point: Point2, direction: Vec2) -> Self {
        Self { point, direction }
    }
}

/// Where a point sits relative to a polygon, up to a boundary tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// Intersection of an infinite line with a closed convex polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClippedLine {
    Segment(Point2, Point2),
    Point(Point2),
    Empty,
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Point2,
    pub max: Point2,
}

impl Bounds {
    pub fn of_points(points: &[Point2]) -> Bounds {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        Bounds { min, max }
    }

    pub fn union(self, other: Bounds) -> Bounds {
        Bounds {
            min: Point2::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point2::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    /// Grows the box by `pad` on every side.
    pub fn expanded(self, pad: f64) -> Bounds {
        Bounds {
            min: Point2::new(self.min.x - pad, self.min.y - pad),
            max: Point2::new(self.max.x + pad, self.max.y + pad),
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

/// A strictly convex polygon with counterclockwise vertices.
///
/// Validation happens once at construction; every downstream operation may
/// assume a well-formed polygon.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    sides: Vec<OrientedLine>,
    area: f64,
}

impl ConvexPolygon {
    /// Validates and builds a polygon with the default tolerance
    /// [`EPS_GEOM`]. Clockwise input is reversed, keeping the first vertex
    /// first.
    pub fn new(points: &[Point2]) -> Result<Self> {
        Self::with_eps(points, EPS_GEOM)
    }

    /// Same as [`ConvexPolygon::new`] with an explicit geometric tolerance.
    pub fn with_eps(points: &[Point2], eps_geom: f64) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateInput("fewer than 3 vertices"));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegenerateInput("non-finite vertex coordinates"));
        }
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                if a.distance(*b) <= eps_geom {
                    return Err(Error::DegenerateInput("repeated vertices"));
                }
            }
        }

        let mut vertices = points.to_vec();
        let signed_area = shoelace(&vertices);
        if signed_area.abs() <= eps_geom {
            return Err(Error::DegenerateInput("collinear vertices"));
        }
        if signed_area < 0.0 {
            // Reverse the cycle but keep the starting vertex stable.
            vertices[1..].reverse();
        }

        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            let cross = (b - a).cross(c - b);
            if cross < -eps_geom {
                return Err(Error::NotConvex);
            }
            if cross <= eps_geom {
                return Err(Error::DegenerateInput("collinear vertices"));
            }
        }

        let sides = (0..n)
            .map(|i| OrientedLine::through(vertices[i], vertices[(i + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        let area = shoelace(&vertices);
        Ok(Self { vertices, sides, area })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn num_sides(&self) -> usize {
        self.vertices.len()
    }

    /// Side `i` runs from vertex `i` to vertex `i + 1`; its normal points
    /// outward.
    pub fn side(&self, i: usize) -> OrientedLine {
        self.sides[i]
    }

    pub fn sides(&self) -> &[OrientedLine] {
        &self.sides
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len() as f64;
        let sum = self
            .vertices
            .iter()
            .fold(Vec2::default(), |acc, p| acc + p.to_vec());
        Point2::new(sum.x / n, sum.y / n)
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::of_points(&self.vertices)
    }

    /// Classifies `p` against the polygon: inside iff every signed side
    /// distance is below `-boundary_tol`, outside iff some distance exceeds
    /// `+boundary_tol`, boundary otherwise.
    pub fn contains(&self, p: Point2, boundary_tol: f64) -> Containment {
        let max_signed = self
            .sides
            .iter()
            .map(|side| side.signed_distance(p))
            .fold(f64::NEG_INFINITY, f64::max);
        if max_signed > boundary_tol {
            Containment::Outside
        } else if max_signed < -boundary_tol {
            Containment::Inside
        } else {
            Containment::Boundary
        }
    }

    /// Intersects an infinite line with the closed polygon.
    pub fn clip_line(&self, line: &ParamLine) -> ClippedLine {
        self.clip_line_with_eps(line, EPS_GEOM)
    }

    /// Cyrus-Beck clipping of the parametrized line against each side
    /// half-plane. A parameter window thinner than `eps_geom` collapses to a
    /// single point (a supporting line through a vertex).
    pub fn clip_line_with_eps(&self, line: &ParamLine, eps_geom: f64) -> ClippedLine {
        let Some(dir) = line.direction.normalized() else {
            return ClippedLine::Empty;
        };
        let p0 = line.point;
        let mut t_min = f64::NEG_INFINITY;
        let mut t_max = f64::INFINITY;
        for side in &self.sides {
            let denom = side.normal().dot(dir);
            let dist = side.signed_distance(p0);
            if denom == 0.0 {
                // Line parallel to this side: either fully outside or unconstrained.
                if dist > eps_geom {
                    return ClippedLine::Empty;
                }
            } else {
                let t = -dist / denom;
                if denom > 0.0 {
                    t_max = t_max.min(t);
                } else {
                    t_min = t_min.max(t);
                }
            }
        }
        if t_min > t_max + eps_geom {
            ClippedLine::Empty
        } else if t_max - t_min <= eps_geom {
            ClippedLine::Point(p0 + dir * (0.5 * (t_min + t_max)))
        } else {
            ClippedLine::Segment(p0 + dir * t_min, p0 + dir * t_max)
        }
    }
}

fn shoelace(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut twice_area = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        twice_area += a.x * b.y - b.x * a.y;
    }
    0.5 * twice_area
}

/// A non-degenerate triangle, stored as a three-sided [`ConvexPolygon`].
#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    poly: ConvexPolygon,
}

impl Triangle {
    pub fn new(a: Point2, b: Point2, c: Point2) -> Result<Self> {
        Self::from_polygon(ConvexPolygon::new(&[a, b, c])?)
    }

    pub fn from_polygon(poly: ConvexPolygon) -> Result<Self> {
        if poly.num_sides() != 3 {
            return Err(Error::DegenerateInput("triangle needs exactly 3 vertices"));
        }
        Ok(Self { poly })
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.poly
    }

    pub fn vertices(&self) -> [Point2; 3] {
        [self.poly.vertices[0], self.poly.vertices[1], self.poly.vertices[2]]
    }

    pub fn area(&self) -> f64 {
        self.poly.area()
    }

    pub fn side_lengths(&self) -> [f64; 3] {
        let v = self.vertices();
        [v[0].distance(v[1]), v[1].distance(v[2]), v[2].distance(v[0])]
    }

    /// Distance from the line of side `i` to the opposite vertex, per side:
    /// `2 area / |side i|`.
    pub fn altitudes(&self) -> [f64; 3] {
        let lengths = self.side_lengths();
        let twice_area = 2.0 * self.area();
        [
            twice_area / lengths[0],
            twice_area / lengths[1],
            twice_area / lengths[2],
        ]
    }

    /// True when all three sides have equal length within `rel_tol` of the
    /// longest.
    pub fn is_equilateral(&self, rel_tol: f64) -> bool {
        let [a, b, c] = self.side_lengths();
        let longest = a.max(b).max(c);
        (a - b).abs() <= rel_tol * longest && (b - c).abs() <= rel_tol * longest
    }
}

impl AsRef<ConvexPolygon> for Triangle {
    fn as_ref(&self) -> &ConvexPolygon {
        &self.poly
    }
}

impl TryFrom<ConvexPolygon> for Triangle {
    type Error = Error;
    fn try_from(poly: ConvexPolygon) -> Result<Self> {
        Self::from_polygon(poly)
    }
}
