//! The distance-sum functional of a convex polygon and its level sets.
//!
//! For a point P inside a convex polygon, the sum of the distances from P to
//! all side lines is an affine function of P: each unsigned distance equals
//! `offset - normal . P` under the outward-normal convention. The functional
//! is extended to the whole plane by that affine formula; habitat queries
//! clip the answer back to the polygon, where the physical meaning holds.

use crate::error::{Error, Result};
use crate::geom::{ClippedLine, Containment, ConvexPolygon, ParamLine, Point2, Triangle, Vec2, EPS_GEOM};

/// Tolerance for comparing functional values, in length units.
pub const EPS_VAL: f64 = 1e-9;

/// The affine functional `value(P) = gradient . P + constant` agreeing with
/// the unsigned side-distance sum on the closed polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineDistanceSum {
    gradient: Vec2,
    constant: f64,
}

impl AffineDistanceSum {
    pub fn gradient(&self) -> Vec2 {
        self.gradient
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn value(&self, p: Point2) -> f64 {
        self.gradient.dot(p.to_vec()) + self.constant
    }

    /// True when the gradient vanishes within [`EPS_VAL`]; the functional is
    /// then constant on the whole plane. For triangles this happens exactly
    /// when the triangle is equilateral.
    pub fn is_constant(&self) -> bool {
        self.gradient.norm() <= EPS_VAL
    }
}

/// Where a prescribed distance-sum level lives inside the polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Habitat {
    pub kind: HabitatKind,
    pub level: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HabitatKind {
    /// The functional is constant and equals the level: every interior point
    /// qualifies.
    Everywhere,
    Segment(Point2, Point2),
    Point(Point2),
    Empty,
}

impl Habitat {
    pub fn is_empty(&self) -> bool {
        matches!(self.kind, HabitatKind::Empty)
    }
}

/// Outcome of testing whether the functional takes one common value at three
/// non-collinear sample points (and hence on the whole polygon).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Constancy {
    Constant { value: f64 },
    Varies,
}

/// The distance-sum functional of `poly`: gradient is minus the sum of the
/// outward unit normals, constant is the sum of the side offsets.
pub fn distance_sum_functional(poly: &ConvexPolygon) -> AffineDistanceSum {
    let mut gradient = Vec2::default();
    let mut constant = 0.0;
    for side in poly.sides() {
        gradient = gradient - side.normal();
        constant += side.offset();
    }
    AffineDistanceSum { gradient, constant }
}

/// Minimum and maximum of the distance sum over the closed polygon. The
/// functional is affine, so both are attained at vertices; for a triangle
/// they are the smallest and largest altitudes.
pub fn value_range(poly: &ConvexPolygon) -> (f64, f64) {
    let f = distance_sum_functional(poly);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in poly.vertices() {
        let val = f.value(v);
        lo = lo.min(val);
        hi = hi.max(val);
    }
    (lo, hi)
}

/// The set of polygon points whose distance sum equals `c`.
///
/// Levels within [`EPS_VAL`] of the attainable range are clamped onto it, so
/// `c` equal to the minimum or maximum yields the corresponding vertex
/// (closed-interval semantics).
pub fn level_segment(poly: &ConvexPolygon, c: f64) -> Habitat {
    let f = distance_sum_functional(poly);
    if f.is_constant() {
        let kind = if (f.constant() - c).abs() <= EPS_VAL {
            HabitatKind::Everywhere
        } else {
            HabitatKind::Empty
        };
        return Habitat { kind, level: c };
    }
    let (lo, hi) = value_range(poly);
    if c < lo - EPS_VAL || c > hi + EPS_VAL {
        return Habitat { kind: HabitatKind::Empty, level: c };
    }
    let clamped = c.clamp(lo, hi);

    // The level line {gradient . P = clamped - constant}.
    let g = f.gradient();
    let base = Point2::default() + g * ((clamped - f.constant()) / g.norm_squared());
    let line = ParamLine::new(base, g.perp());
    let kind = match poly.clip_line(&line) {
        ClippedLine::Segment(a, b) => HabitatKind::Segment(a, b),
        ClippedLine::Point(p) => HabitatKind::Point(p),
        ClippedLine::Empty => HabitatKind::Empty,
    };
    Habitat { kind, level: c }
}

/// Splits the polygon into `m` parallel level segments at the mid-levels
/// `min + (i + 1/2) (max - min) / m`.
///
/// When the functional is constant there is no level structure to draw; the
/// result collapses to a single `Everywhere` habitat regardless of `m`.
pub fn parallel_decomposition(poly: &ConvexPolygon, m: usize) -> Vec<Habitat> {
    assert!(m >= 1, "at least one level required");
    let f = distance_sum_functional(poly);
    if f.is_constant() {
        return vec![Habitat { kind: HabitatKind::Everywhere, level: f.constant() }];
    }
    let (lo, hi) = value_range(poly);
    let step = (hi - lo) / m as f64;
    (0..m)
        .map(|i| level_segment(poly, lo + (i as f64 + 0.5) * step))
        .collect()
}

/// Tests whether the distance sum takes the same value at three
/// non-collinear sample points. If it does, the functional is constant on
/// the whole polygon; for a triangle that certifies it is equilateral.
///
/// Points may touch the boundary (the functional is continuous up to it);
/// points outside the polygon are rejected.
pub fn infer_constancy(
    poly: &ConvexPolygon,
    p1: Point2,
    p2: Point2,
    p3: Point2,
) -> Result<Constancy> {
    if (p2 - p1).cross(p3 - p1).abs() <= EPS_GEOM {
        return Err(Error::CollinearSamples);
    }
    for p in [p1, p2, p3] {
        if poly.contains(p, EPS_GEOM) == Containment::Outside {
            return Err(Error::PointOutside);
        }
    }
    let f = distance_sum_functional(poly);
    let values = [f.value(p1), f.value(p2), f.value(p3)];
    let constant = values
        .iter()
        .all(|v| (v - values[0]).abs() <= EPS_VAL);
    if constant {
        Ok(Constancy::Constant { value: (values[0] + values[1] + values[2]) / 3.0 })
    } else {
        Ok(Constancy::Varies)
    }
}

/// Recovers the unique equilateral triangle on base `v1 v2` that contains
/// all three witness points (the triangle certified by equal distance sums
/// at three non-collinear points).
///
/// Witness points may lie on the boundary of the candidate triangle; if
/// neither the upward nor the downward apex works the witnesses are
/// inconsistent with an equilateral triangle on that base.
pub fn reconstruct_equilateral_from_base(
    v1: Point2,
    v2: Point2,
    witnesses: &[Point2; 3],
) -> Result<Triangle> {
    let base = v2 - v1;
    if base.norm() <= EPS_GEOM {
        return Err(Error::DegenerateInput("base vertices coincide"));
    }
    let [w1, w2, w3] = *witnesses;
    if (w2 - w1).cross(w3 - w1).abs() <= EPS_GEOM {
        return Err(Error::CollinearSamples);
    }
    let mid = v1.midpoint(v2);
    let half_height = base.perp() * (3.0_f64.sqrt() / 2.0);
    for apex in [mid + half_height, mid - half_height] {
        let tri = Triangle::new(v1, v2, apex)?;
        let inside = witnesses
            .iter()
            .all(|w| tri.polygon().contains(*w, EPS_GEOM) != Containment::Outside);
        if inside {
            return Ok(tri);
        }
    }
    Err(Error::WitnessOutside)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn right_triangle() -> ConvexPolygon {
        ConvexPolygon::new(&[
            Point2::new(0.0, 0.0),
            Point2::new(0.0, 3.0),
            Point2::new(4.0, 0.0),
        ])
        .unwrap()
    }

    fn equilateral(side: f64) -> ConvexPolygon {
        ConvexPolygon::new(&[
            Point2::new(0.0, 0.0),
            Point2::new(side, 0.0),
            Point2::new(side / 2.0, side * 3.0_f64.sqrt() / 2.0),
        ])
        .unwrap()
    }

    #[test]
    fn functional_of_right_triangle() {
        let f = distance_sum_functional(&right_triangle());
        assert!((f.gradient().x - 2.0 / 5.0).abs() < 1e-12);
        assert!((f.gradient().y - 1.0 / 5.0).abs() < 1e-12);
        assert!((f.constant() - 12.0 / 5.0).abs() < 1e-12);
    }

    #[test]
    fn functional_matches_direct_sum_inside() {
        let poly = right_triangle();
        let f = distance_sum_functional(&poly);
        for p in [Point2::new(0.5, 0.5), Point2::new(1.0, 1.0), Point2::new(2.0, 0.5)] {
            let direct: f64 = poly.sides().iter().map(|s| s.distance(p)).sum();
            assert!((f.value(p) - direct).abs() <= 1e-12 * direct.max(1.0));
        }
    }

    #[test]
    fn equilateral_functional_is_constant() {
        let f = distance_sum_functional(&equilateral(4.0));
        assert!(f.is_constant());
        assert!((f.constant() - 2.0 * 3.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn unit_square_functional_is_constant_two() {
        let square = ConvexPolygon::new(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let f = distance_sum_functional(&square);
        assert!(f.is_constant());
        assert!((f.constant() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn value_range_attained_at_vertices() {
        let poly = right_triangle();
        let (lo, hi) = value_range(&poly);
        // Vertex values are the altitudes to the opposite sides: 12/5, 3, 4.
        assert!((lo - 12.0 / 5.0).abs() < 1e-12);
        assert!((hi - 4.0).abs() < 1e-12);

        let f = distance_sum_functional(&poly);
        let tri = Triangle::from_polygon(poly.clone()).unwrap();
        let mut vertex_values: Vec<f64> = poly.vertices().iter().map(|&v| f.value(v)).collect();
        let mut alts = tri.altitudes().to_vec();
        vertex_values.sort_by(f64::total_cmp);
        alts.sort_by(f64::total_cmp);
        for (v, a) in vertex_values.iter().zip(&alts) {
            assert!((v - a).abs() < 1e-12);
        }
    }

    #[test]
    fn value_range_of_equilateral_is_degenerate() {
        let (lo, hi) = value_range(&equilateral(4.0));
        let h = 2.0 * 3.0_f64.sqrt();
        assert!((lo - h).abs() < 1e-12);
        assert!((hi - h).abs() < 1e-12);
    }

    #[test]
    fn level_segment_golden() {
        let poly = right_triangle();
        let habitat = level_segment(&poly, 3.16743);
        let HabitatKind::Segment(a, b) = habitat.kind else {
            panic!("expected a segment, got {:?}", habitat.kind);
        };
        let f = distance_sum_functional(&poly);
        assert!((f.value(a) - 3.16743).abs() <= EPS_VAL);
        assert!((f.value(b) - 3.16743).abs() <= EPS_VAL);
        // Endpoints derived by clipping the line 2x + y = 5c - 12.
        let on_base = Point2::new(3.83715 / 2.0, 0.0);
        let hyp_x = (4.0 * 3.83715 - 12.0) / 5.0;
        let on_hyp = Point2::new(hyp_x, 3.83715 - 2.0 * hyp_x);
        let (lo, hi) = if a.x < b.x { (a, b) } else { (b, a) };
        assert!(hi.distance(on_base) < 1e-9);
        assert!(lo.distance(on_hyp) < 1e-9);
        // Segment direction is parallel to (1, -2).
        let dir = b - a;
        assert!(dir.cross(Vec2::new(1.0, -2.0)).abs() <= 1e-9 * dir.norm());
    }

    #[test]
    fn level_segment_below_minimum_is_empty() {
        let poly = right_triangle();
        assert!(level_segment(&poly, 2.3).is_empty());
        assert!(level_segment(&poly, 4.2).is_empty());
        // 2.5 sits above the minimum 12/5, so it still yields a segment.
        assert!(matches!(level_segment(&poly, 2.5).kind, HabitatKind::Segment(..)));
    }

    #[test]
    fn level_segment_at_range_end_is_vertex() {
        let poly = right_triangle();
        let habitat = level_segment(&poly, 4.0);
        match habitat.kind {
            HabitatKind::Point(p) => assert!(p.distance(Point2::new(4.0, 0.0)) < 1e-6),
            other => panic!("expected a point, got {other:?}"),
        }
    }

    #[test]
    fn extreme_level_aligned_with_an_edge_is_that_edge() {
        // Isosceles with horizontal base: level lines are horizontal, so the
        // maximal level set is the whole base edge, not a single vertex.
        let poly = ConvexPolygon::new(&[
            Point2::new(-1.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let (_, hi) = value_range(&poly);
        match level_segment(&poly, hi).kind {
            HabitatKind::Segment(a, b) => {
                assert!(a.y.abs() < 1e-9 && b.y.abs() < 1e-9);
                assert!((a.x - b.x).abs() > 1.0);
            }
            other => panic!("expected the base edge, got {other:?}"),
        }
    }

    #[test]
    fn level_segment_on_equilateral_is_everywhere() {
        let poly = equilateral(4.0);
        let habitat = level_segment(&poly, 2.0 * 3.0_f64.sqrt());
        assert_eq!(habitat.kind, HabitatKind::Everywhere);
        assert!(level_segment(&poly, 1.0).is_empty());
    }

    #[test]
    fn decomposition_mid_levels() {
        let poly = right_triangle();
        let habitats = parallel_decomposition(&poly, 3);
        assert_eq!(habitats.len(), 3);
        // Levels are min + (i + 1/2)(max - min)/3 with range [12/5, 4].
        let expected: [f64; 3] = [
            12.0 / 5.0 + 0.5 * (4.0 - 12.0 / 5.0) / 3.0,
            12.0 / 5.0 + 1.5 * (4.0 - 12.0 / 5.0) / 3.0,
            12.0 / 5.0 + 2.5 * (4.0 - 12.0 / 5.0) / 3.0,
        ];
        assert!((expected[0] - 8.0 / 3.0).abs() < 1e-12);
        assert!((expected[1] - 16.0 / 5.0).abs() < 1e-12);
        assert!((expected[2] - 56.0 / 15.0).abs() < 1e-12);
        let mut dirs = Vec::new();
        for (habitat, want) in habitats.iter().zip(expected) {
            assert!((habitat.level - want).abs() < 1e-12);
            let HabitatKind::Segment(a, b) = habitat.kind else {
                panic!("mid-levels must be proper segments");
            };
            dirs.push((b - a).normalized().unwrap());
        }
        for pair in dirs.windows(2) {
            assert!(pair[0].cross(pair[1]).abs() <= 1e-9);
        }
    }

    #[test]
    fn decomposition_collapses_for_constant_functional() {
        let habitats = parallel_decomposition(&equilateral(2.0), 5);
        assert_eq!(habitats.len(), 1);
        assert_eq!(habitats[0].kind, HabitatKind::Everywhere);
    }

    #[test]
    fn single_level_decomposition() {
        let habitats = parallel_decomposition(&right_triangle(), 1);
        assert_eq!(habitats.len(), 1);
        assert!((habitats[0].level - (12.0 / 5.0 + 4.0) / 2.0).abs() < 1e-12);
        assert!(matches!(habitats[0].kind, HabitatKind::Segment(..)));
    }

    #[test]
    fn constancy_on_equilateral() {
        let poly = equilateral(4.0);
        let verdict = infer_constancy(
            &poly,
            Point2::new(1.0, 0.5),
            Point2::new(2.5, 1.0),
            Point2::new(2.0, 2.0),
        )
        .unwrap();
        match verdict {
            Constancy::Constant { value } => {
                assert!((value - 2.0 * 3.0_f64.sqrt()).abs() < 1e-12);
            }
            Constancy::Varies => panic!("equilateral triangle must be constant"),
        }
    }

    #[test]
    fn constancy_fails_on_scalene() {
        // V = (2x + y + 12)/5 takes values 3, 3.3, 2.9 at these points.
        let verdict = infer_constancy(
            &right_triangle(),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 0.5),
            Point2::new(1.0, 0.5),
        )
        .unwrap();
        assert_eq!(verdict, Constancy::Varies);
    }

    #[test]
    fn constancy_rejects_collinear_samples() {
        let err = infer_constancy(
            &right_triangle(),
            Point2::new(1.0, 1.0),
            Point2::new(1.5, 1.0),
            Point2::new(2.0, 1.0),
        )
        .unwrap_err();
        assert_eq!(err, Error::CollinearSamples);
    }

    #[test]
    fn constancy_rejects_outside_points() {
        let err = infer_constancy(
            &right_triangle(),
            Point2::new(1.0, 1.0),
            Point2::new(5.0, 5.0),
            Point2::new(1.0, 0.5),
        )
        .unwrap_err();
        assert_eq!(err, Error::PointOutside);
    }

    fn apex_of(tri: &Triangle, v1: Point2, v2: Point2) -> Point2 {
        tri.vertices()
            .into_iter()
            .find(|p| p.distance(v1) > 1e-9 && p.distance(v2) > 1e-9)
            .expect("triangle has a vertex besides the base")
    }

    #[test]
    fn reconstruct_canonical_base() {
        let v1 = Point2::new(-2.0, 0.0);
        let v2 = Point2::new(2.0, 0.0);
        let tri = reconstruct_equilateral_from_base(
            v1,
            v2,
            &[v1, Point2::new(0.5, 1.0 / 3.0), v2],
        )
        .unwrap();
        let apex = apex_of(&tri, v1, v2);
        assert!(apex.distance(Point2::new(0.0, 2.0 * 3.0_f64.sqrt())) < 1e-9);
    }

    #[test]
    fn reconstruct_unit_base_both_sides() {
        let v1 = Point2::new(0.0, 0.0);
        let v2 = Point2::new(1.0, 0.0);
        let above = reconstruct_equilateral_from_base(
            v1,
            v2,
            &[Point2::new(0.2, 0.1), Point2::new(0.5, 0.4), Point2::new(0.8, 0.1)],
        )
        .unwrap();
        assert!(apex_of(&above, v1, v2).distance(Point2::new(0.5, 3.0_f64.sqrt() / 2.0)) < 1e-9);

        let below = reconstruct_equilateral_from_base(
            v1,
            v2,
            &[Point2::new(0.2, -0.1), Point2::new(0.5, -0.4), Point2::new(0.8, -0.1)],
        )
        .unwrap();
        assert!(apex_of(&below, v1, v2).distance(Point2::new(0.5, -(3.0_f64.sqrt()) / 2.0)) < 1e-9);
    }

    #[test]
    fn reconstruct_rejects_straddling_witnesses() {
        let err = reconstruct_equilateral_from_base(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            &[Point2::new(0.2, 0.3), Point2::new(0.5, -0.3), Point2::new(0.8, 0.1)],
        )
        .unwrap_err();
        assert_eq!(err, Error::WitnessOutside);
    }

    #[test]
    fn reconstruct_rejects_collinear_witnesses() {
        let err = reconstruct_equilateral_from_base(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            &[Point2::new(0.2, 0.1), Point2::new(0.5, 0.1), Point2::new(0.8, 0.1)],
        )
        .unwrap_err();
        assert_eq!(err, Error::CollinearSamples);
    }
}
