//! Property-based invariants over random polygons, triangles, and rigid
//! motions.

use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use trilocus::{
    classify, distance_sum_functional, infer_constancy, intersect_line_conic, level_segment,
    locus_conic, parallel_decomposition, squared_distance_sum, triangle_for_ellipse, value_range,
    ClippedLine, Constancy, ConicClass, ConvexPolygon, EllipseCanonical, HabitatKind, ParamLine,
    Point2, Triangle, Vec2, EPS_GEOM,
};

fn approx_rel(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Strictly convex polygons: points on a circle with bounded angular gaps,
/// then scaled, rotated, and translated.
fn polygon_strategy() -> impl Strategy<Value = ConvexPolygon> {
    (3usize..=8)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0.3f64..1.0, n),
                0.5f64..3.0,
                0.0f64..TAU,
                -5.0f64..5.0,
                -5.0f64..5.0,
            )
        })
        .prop_map(|(gaps, scale, rot, tx, ty)| {
            let total: f64 = gaps.iter().sum();
            let mut angle = 0.0;
            let points: Vec<Point2> = gaps
                .iter()
                .map(|gap| {
                    angle += gap / total * TAU;
                    let a = angle + rot;
                    Point2::new(tx + scale * a.cos(), ty + scale * a.sin())
                })
                .collect();
            ConvexPolygon::new(&points).expect("circle points are strictly convex")
        })
}

/// Well-conditioned triangles: two edges of bounded length with a bounded
/// angle between them.
fn triangle_strategy() -> impl Strategy<Value = Triangle> {
    (
        -3.0f64..3.0,
        -3.0f64..3.0,
        1.0f64..3.0,
        0.0f64..TAU,
        1.0f64..3.0,
        0.4f64..(PI - 0.4),
    )
        .prop_map(|(x, y, r1, theta, r2, phi)| {
            let v0 = Point2::new(x, y);
            let v1 = v0 + Vec2::new(r1 * theta.cos(), r1 * theta.sin());
            let a2 = theta + phi;
            let v2 = v0 + Vec2::new(r2 * a2.cos(), r2 * a2.sin());
            Triangle::new(v0, v1, v2).expect("constructed non-degenerate")
        })
}

fn equilateral_strategy() -> impl Strategy<Value = Triangle> {
    (0.5f64..5.0, 0.0f64..TAU, -5.0f64..5.0, -5.0f64..5.0).prop_map(|(side, rot, tx, ty)| {
        let vertex = |i: f64| {
            let a = rot + i * TAU / 3.0;
            Point2::new(tx + side / 3.0_f64.sqrt() * a.cos(), ty + side / 3.0_f64.sqrt() * a.sin())
        };
        Triangle::new(vertex(0.0), vertex(1.0), vertex(2.0)).expect("equilateral")
    })
}

/// A strictly interior point as a normalized positive combination of the
/// vertices.
fn interior_point(poly: &ConvexPolygon, weights: &[f64]) -> Point2 {
    let total: f64 = weights[..poly.num_sides()].iter().sum();
    let mut acc = Vec2::new(0.0, 0.0);
    for (v, w) in poly.vertices().iter().zip(weights) {
        acc = acc + v.to_vec() * (w / total);
    }
    Point2::new(acc.x, acc.y)
}

fn rigid(p: Point2, angle: f64, shift: Vec2) -> Point2 {
    let (s, c) = angle.sin_cos();
    Point2::new(c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y)
}

proptest! {
    /// The affine functional reproduces the direct unsigned distance sum at
    /// interior points.
    #[test]
    fn functional_equals_direct_sum(
        poly in polygon_strategy(),
        weights in prop::collection::vec(0.05f64..1.0, 8),
        extra in prop::collection::vec(0.05f64..1.0, 8),
    ) {
        let f = distance_sum_functional(&poly);
        for w in [&weights, &extra] {
            let p = interior_point(&poly, w);
            let direct: f64 = poly.sides().iter().map(|s| s.distance(p)).sum();
            prop_assert!(approx_rel(f.value(p), direct, 1e-12));
        }
    }

    /// Extremes of the functional are attained at vertices; for triangles
    /// they are the extreme altitudes.
    #[test]
    fn value_range_is_vertex_attained(poly in polygon_strategy()) {
        let f = distance_sum_functional(&poly);
        let (lo, hi) = value_range(&poly);
        let at_vertex = poly
            .vertices()
            .iter()
            .any(|&v| (f.value(v) - lo).abs() <= 1e-12 * lo.max(1.0));
        prop_assert!(at_vertex);
        if poly.num_sides() == 3 {
            let tri = Triangle::from_polygon(poly.clone()).unwrap();
            let alts = tri.altitudes();
            let min_alt = alts.iter().fold(f64::INFINITY, |a, &b| a.min(b));
            let max_alt = alts.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
            prop_assert!(approx_rel(lo, min_alt, 1e-12));
            prop_assert!(approx_rel(hi, max_alt, 1e-12));
        }
    }

    /// A level is realizable exactly when it lies in the attained range, and
    /// realized points evaluate back to the level.
    #[test]
    fn level_segment_respects_range(poly in polygon_strategy(), t in 0.0f64..1.0) {
        let f = distance_sum_functional(&poly);
        let (lo, hi) = value_range(&poly);
        prop_assume!(hi - lo > 1e-6);
        let c = lo + t * (hi - lo);
        let habitat = level_segment(&poly, c);
        match habitat.kind {
            HabitatKind::Segment(a, b) => {
                prop_assert!((f.value(a) - c).abs() <= 1e-9);
                prop_assert!((f.value(b) - c).abs() <= 1e-9);
            }
            HabitatKind::Point(p) => prop_assert!((f.value(p) - c).abs() <= 1e-9),
            other => prop_assert!(false, "level inside range must be realized, got {other:?}"),
        }
        prop_assert!(level_segment(&poly, hi + 1e-6).is_empty());
        prop_assert!(level_segment(&poly, lo - 1e-6).is_empty());
    }

    /// All decomposition segments share one direction.
    #[test]
    fn decomposition_segments_are_parallel(poly in polygon_strategy(), m in 2usize..12) {
        let (lo, hi) = value_range(&poly);
        prop_assume!(hi - lo > 1e-6);
        let dirs: Vec<Vec2> = parallel_decomposition(&poly, m)
            .iter()
            .filter_map(|h| match h.kind {
                HabitatKind::Segment(a, b) => (b - a).normalized(),
                _ => None,
            })
            .collect();
        for pair in dirs.windows(2) {
            prop_assert!(pair[0].cross(pair[1]).abs() <= 1e-9);
        }
    }

    /// Equal values at three non-collinear interior points certify an
    /// equilateral triangle, and every equilateral triangle passes the test.
    #[test]
    fn constancy_iff_equilateral(
        tri in triangle_strategy(),
        equi in equilateral_strategy(),
        weights in prop::collection::vec(0.05f64..1.0, 9),
    ) {
        for triangle in [&tri, &equi] {
            let poly = triangle.polygon();
            // A vanishing gradient and equal side lengths are the same thing.
            let f = distance_sum_functional(poly);
            prop_assert_eq!(f.is_constant(), triangle.is_equilateral(1e-9));

            let p1 = interior_point(poly, &weights[0..3]);
            let p2 = interior_point(poly, &weights[3..6]);
            let p3 = interior_point(poly, &weights[6..9]);
            let Ok(verdict) = infer_constancy(poly, p1, p2, p3) else {
                // Degenerate sample layout; nothing to check.
                continue;
            };
            match verdict {
                Constancy::Constant { value } => {
                    prop_assert!(triangle.is_equilateral(1e-6));
                    let altitude = triangle.altitudes()[0];
                    prop_assert!(approx_rel(value, altitude, 1e-9));
                }
                Constancy::Varies => prop_assert!(!triangle.is_equilateral(1e-9)),
            }
        }
    }

    /// Clipping commutes with rigid motions.
    #[test]
    fn clip_is_rigid_equivariant(
        poly in polygon_strategy(),
        psi in 0.0f64..TAU,
        angle in 0.0f64..TAU,
        tx in -4.0f64..4.0,
        ty in -4.0f64..4.0,
    ) {
        let shift = Vec2::new(tx, ty);
        let dir = Vec2::new(psi.cos(), psi.sin());
        let line = ParamLine::new(poly.centroid(), dir);
        let ClippedLine::Segment(a, b) = poly.clip_line(&line) else {
            return Err(TestCaseError::fail("centroid line must cross the polygon"));
        };

        let moved_points: Vec<Point2> =
            poly.vertices().iter().map(|&v| rigid(v, angle, shift)).collect();
        let moved = ConvexPolygon::new(&moved_points).unwrap();
        let moved_line = ParamLine::new(
            rigid(line.point, angle, shift),
            Vec2::new(angle.cos() * dir.x - angle.sin() * dir.y,
                      angle.sin() * dir.x + angle.cos() * dir.y),
        );
        let ClippedLine::Segment(ma, mb) = moved.clip_line(&moved_line) else {
            return Err(TestCaseError::fail("moved line must still cross"));
        };
        prop_assert!(ma.distance(rigid(a, angle, shift)) <= 1e-9);
        prop_assert!(mb.distance(rigid(b, angle, shift)) <= 1e-9);
    }

    /// The quadratic form reproduces the direct squared-distance sum inside
    /// and outside the triangle.
    #[test]
    fn quadratic_form_equals_direct_sum(
        tri in triangle_strategy(),
        px in -8.0f64..8.0,
        py in -8.0f64..8.0,
    ) {
        let q = squared_distance_sum(&tri);
        let p = Point2::new(px, py);
        let direct: f64 = tri
            .polygon()
            .sides()
            .iter()
            .map(|s| {
                let d = s.distance(p);
                d * d
            })
            .sum();
        prop_assert!(approx_rel(q.value(p), direct, 1e-12));
    }

    /// Every triangle locus is definite: negative discriminant, and the
    /// parametrized geometry lands back on the coefficient equation.
    #[test]
    fn locus_is_definite_and_consistent(tri in triangle_strategy(), delta in 0.5f64..5.0) {
        let q = squared_distance_sum(&tri);
        let conic = locus_conic(&tri, q.min_value() + delta);
        prop_assert!(conic.discriminant() < 0.0);
        prop_assert!((conic.a + conic.c - 1.0).abs() <= 1e-12);

        let geom = classify(&conic).unwrap();
        prop_assert!(matches!(geom.class, ConicClass::Ellipse | ConicClass::Circle));
        for i in 0..64 {
            let p = geom.point_at(TAU * i as f64 / 64.0);
            prop_assert!(conic.value_at(p).abs() <= 1e-9);
        }
    }

    /// A line through the center meets the locus ellipse twice, on both
    /// curves.
    #[test]
    fn center_line_meets_locus_twice(
        tri in triangle_strategy(),
        delta in 0.5f64..5.0,
        psi in 0.0f64..TAU,
    ) {
        let q = squared_distance_sum(&tri);
        let k = q.min_value() + delta;
        let conic = locus_conic(&tri, k);
        let line = ParamLine::new(q.minimizer(), Vec2::new(psi.cos(), psi.sin()));
        let points = intersect_line_conic(&conic, &line);
        prop_assert_eq!(points.len(), 2);
        for p in points {
            prop_assert!(conic.value_at(p).abs() <= 1e-9);
            prop_assert!(approx_rel(q.value(p), k, 1e-9));
        }
    }

    /// Locus geometry transforms with the triangle: center and rotation move
    /// along, semi-axes and discriminant stay put.
    #[test]
    fn locus_is_rigid_equivariant(
        tri in triangle_strategy(),
        delta in 0.5f64..5.0,
        angle in 0.0f64..TAU,
        tx in -4.0f64..4.0,
        ty in -4.0f64..4.0,
    ) {
        let q = squared_distance_sum(&tri);
        let k = q.min_value() + delta;
        let conic = locus_conic(&tri, k);
        let geom = classify(&conic).unwrap();
        prop_assume!(geom.class == ConicClass::Ellipse);

        let shift = Vec2::new(tx, ty);
        let [a, b, c] = tri.vertices();
        let moved = Triangle::new(
            rigid(a, angle, shift),
            rigid(b, angle, shift),
            rigid(c, angle, shift),
        )
        .unwrap();
        // The minimum of the form is invariant, so the same offset applies.
        let moved_conic = locus_conic(&moved, k);
        let moved_geom = classify(&moved_conic).unwrap();

        prop_assert!(moved_geom.center.distance(rigid(geom.center, angle, shift)) <= 1e-9);
        prop_assert!(approx_rel(moved_geom.semi_major, geom.semi_major, 1e-9));
        prop_assert!(approx_rel(moved_geom.semi_minor, geom.semi_minor, 1e-9));
        prop_assert!((moved_conic.discriminant() - conic.discriminant()).abs() <= 1e-9);
        let diff = (moved_geom.rotation - geom.rotation - angle).rem_euclid(PI);
        prop_assert!(diff.min(PI - diff) <= 1e-9);
    }

    /// Synthesizing a triangle for a canonical ellipse and classifying its
    /// forward locus lands back on the ellipse.
    #[test]
    fn inverse_synthesis_round_trips(beta in 0.4f64..3.0, ratio in 1.0f64..4.0) {
        let alpha = beta * ratio;
        let e = EllipseCanonical::new(alpha * alpha, beta * beta).unwrap();
        let (params, tri) = triangle_for_ellipse(&e);
        let geom = classify(&locus_conic(&tri, params.k)).unwrap();
        prop_assert!(geom.center.distance(Point2::new(0.0, 0.0)) <= 1e-9);
        prop_assert!(approx_rel(geom.semi_major, alpha, 1e-9));
        prop_assert!(approx_rel(geom.semi_minor, beta, 1e-9));
        prop_assert!(geom.rotation.abs() <= 1e-9);

        // The level constant matches the form on the target ellipse.
        let q = squared_distance_sum(&tri);
        for i in 0..8 {
            let theta = TAU * i as f64 / 8.0;
            let p = Point2::new(alpha * theta.cos(), beta * theta.sin());
            prop_assert!(approx_rel(q.value(p), params.k, 1e-9));
        }

        let circle = trilocus::is_circle_case(&tri);
        prop_assert_eq!(circle, (alpha * alpha - beta * beta).abs() <= 1e-9 * alpha * alpha);
    }

    /// Polygon construction invariants: vertices sit on their sides and
    /// interior points are strictly inside every half-plane.
    #[test]
    fn polygon_side_conventions(
        poly in polygon_strategy(),
        weights in prop::collection::vec(0.05f64..1.0, 8),
    ) {
        let n = poly.num_sides();
        for i in 0..n {
            let side = poly.side(i);
            prop_assert!(side.distance(poly.vertices()[i]) <= EPS_GEOM);
            prop_assert!(side.distance(poly.vertices()[(i + 1) % n]) <= EPS_GEOM);
        }
        let p = interior_point(&poly, &weights);
        for side in poly.sides() {
            prop_assert!(side.signed_distance(p) < 0.0);
        }
    }
}
