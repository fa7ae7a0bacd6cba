//! The four subcommands: habitat, locus, inverse, verify.
//!
//! Each command builds its textual report (and figure) as a pure function of
//! the scene, so identical inputs produce byte-identical output.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::fmt::Write as _;

use trilocus::{
    classify, contour_residual, distance_sum_functional, intersect_line_conic, level_segment,
    locus_conic, parallel_decomposition, sample_linear_field, sample_quadratic_field_covering,
    squared_distance_sum, triangle_for_ellipse, value_range, Bounds, ConicClass,
    ConicCoefficients, ConicGeometry, Containment, ConvexPolygon, EllipseCanonical, FieldSample,
    Habitat, HabitatKind, ParamLine, Point2,
};

use crate::report::{point, sig12};
use crate::scene::Scene;
use crate::svg::Figure;
use crate::CliError;

const CURVE_SAMPLES: usize = 256;
const CONTOUR_SAMPLES: usize = 64;
/// Contour residual budget at the reference resolution of 512 nodes per
/// unit; it scales inversely with the requested resolution.
const RESIDUAL_BUDGET_512: f64 = 1e-3;
/// Relative budget for node-by-node agreement between the sampled fields and
/// the closed-form functionals.
const AGREEMENT_BUDGET: f64 = 1e-12;

pub struct CommandOutput {
    pub report: String,
    pub svg: Option<String>,
}

pub struct VerifyOutput {
    pub report: String,
    pub passed: bool,
    pub field_csv: Option<String>,
}

/// Where a constant distance-sum level lives inside the polygon.
pub fn habitat(
    scene: &Scene,
    want_svg: bool,
    decorate: bool,
    levels: Option<usize>,
) -> Result<CommandOutput, CliError> {
    let poly = scene.polygon()?;
    let level = scene
        .leg_sum
        .ok_or_else(|| CliError::Input("habitat needs 'leg_sum' in the scene".into()))?;
    let f = distance_sum_functional(&poly);
    let (lo, hi) = value_range(&poly);
    let found = level_segment(&poly, level);

    let mut report = String::new();
    let _ = writeln!(report, "task: habitat");
    let _ = writeln!(
        report,
        "polygon: {} vertices, area {}",
        poly.num_sides(),
        sig12(poly.area())
    );
    let _ = writeln!(
        report,
        "functional: V(x, y) = {} x + {} y + {}",
        sig12(f.gradient().x),
        sig12(f.gradient().y),
        sig12(f.constant())
    );
    let _ = writeln!(report, "range: [{}, {}]", sig12(lo), sig12(hi));
    let _ = writeln!(report, "level: {}", sig12(level));
    describe_habitat(&mut report, &found);

    let decomposition = levels.map(|m| parallel_decomposition(&poly, m));
    if let Some(family) = &decomposition {
        let _ = writeln!(report, "decomposition: {} levels", family.len());
        for habitat in family {
            let _ = write!(report, "  level {}: ", sig12(habitat.level));
            match habitat.kind {
                HabitatKind::Segment(a, b) => {
                    let _ = writeln!(report, "segment {} -- {}", point(a), point(b));
                }
                HabitatKind::Point(p) => {
                    let _ = writeln!(report, "point {}", point(p));
                }
                HabitatKind::Everywhere => {
                    let _ = writeln!(report, "everywhere");
                }
                HabitatKind::Empty => {
                    let _ = writeln!(report, "empty");
                }
            }
        }
    }

    let svg = want_svg.then(|| {
        let mut figure = Figure::new();
        figure.add_polygon(&poly, matches!(found.kind, HabitatKind::Everywhere));
        if let Some(family) = &decomposition {
            for habitat in family {
                if let HabitatKind::Segment(a, b) = habitat.kind {
                    figure.add_level_segment(a, b);
                }
            }
        }
        let probe = match found.kind {
            HabitatKind::Segment(a, b) => {
                figure.add_accent_segment(a, b);
                Some(a.midpoint(b))
            }
            HabitatKind::Point(p) => {
                figure.add_marker(p);
                Some(p)
            }
            HabitatKind::Everywhere => Some(poly.centroid()),
            HabitatKind::Empty => None,
        };
        if decorate {
            if let Some(probe) = probe {
                figure.add_decorations(poly.sides(), probe);
            }
        }
        figure.render(scene.size, scene.margin)
    });

    Ok(CommandOutput { report, svg })
}

fn describe_habitat(report: &mut String, habitat: &Habitat) {
    match habitat.kind {
        HabitatKind::Segment(a, b) => {
            let _ = writeln!(report, "habitat: segment");
            let _ = writeln!(report, "  endpoint: {}", point(a));
            let _ = writeln!(report, "  endpoint: {}", point(b));
        }
        HabitatKind::Point(p) => {
            let _ = writeln!(report, "habitat: point");
            let _ = writeln!(report, "  at: {}", point(p));
        }
        HabitatKind::Everywhere => {
            let _ = writeln!(report, "habitat: everywhere");
        }
        HabitatKind::Empty => {
            let _ = writeln!(report, "habitat: empty");
        }
    }
}

/// The conic locus of a constant squared-distance sum.
pub fn locus(scene: &Scene, want_svg: bool, decorate: bool) -> Result<CommandOutput, CliError> {
    let tri = scene.triangle()?;
    let k = scene
        .squares_sum
        .ok_or_else(|| CliError::Input("locus needs 'squares_sum' in the scene".into()))?;
    let conic = locus_conic(&tri, k);
    let geometry =
        classify(&conic).map_err(|e| CliError::Input(format!("locus classification: {e}")))?;

    let mut report = String::new();
    let _ = writeln!(report, "task: locus");
    let _ = writeln!(report, "triangle: 3 vertices, area {}", sig12(tri.area()));
    let _ = writeln!(report, "k: {}", sig12(k));
    let _ = writeln!(
        report,
        "conic: A = {}, B = {}, C = {}, D = {}, E = {}, F = {}",
        sig12(conic.a),
        sig12(conic.b),
        sig12(conic.c),
        sig12(conic.d),
        sig12(conic.e),
        sig12(conic.f)
    );
    let _ = writeln!(report, "discriminant: {}", sig12(conic.discriminant()));
    describe_geometry(&mut report, &geometry);

    let meeting = scene.leg_sum.map(|level| {
        let habitat = level_segment(tri.polygon(), level);
        let points = match habitat.kind {
            HabitatKind::Segment(a, b) => {
                let line = ParamLine::new(a, b - a);
                intersect_line_conic(&conic, &line)
            }
            // A vertex habitat meets the locus only if it sits on the curve.
            HabitatKind::Point(p) if conic.value_at(p).abs() <= 1e-9 => vec![p],
            _ => Vec::new(),
        };
        (level, habitat, points)
    });
    if let Some((level, habitat, points)) = &meeting {
        let _ = writeln!(report, "leg_sum: {}", sig12(*level));
        if matches!(habitat.kind, HabitatKind::Everywhere) {
            let _ = writeln!(report, "meeting: habitat covers the whole polygon");
        } else {
            let _ = writeln!(report, "meeting points: {}", points.len());
            for p in points {
                let _ = writeln!(report, "  point: {}", point(*p));
            }
        }
    }

    let svg = want_svg.then(|| {
        let mut figure = Figure::new();
        figure.add_polygon(tri.polygon(), false);
        if matches!(geometry.class, ConicClass::Ellipse | ConicClass::Circle) {
            figure.add_curve(curve_points(&geometry));
        } else {
            figure.add_marker(geometry.center);
        }
        if let Some((_, habitat, points)) = &meeting {
            if let HabitatKind::Segment(a, b) = habitat.kind {
                figure.add_accent_segment(a, b);
            }
            for p in points {
                figure.add_marker(*p);
            }
        }
        if decorate && matches!(geometry.class, ConicClass::Ellipse | ConicClass::Circle) {
            figure.add_decorations(tri.polygon().sides(), geometry.point_at(FRAC_PI_4));
        }
        figure.render(scene.size, scene.margin)
    });

    Ok(CommandOutput { report, svg })
}

fn describe_geometry(report: &mut String, geometry: &ConicGeometry) {
    let class = match geometry.class {
        ConicClass::Ellipse => "ellipse",
        ConicClass::Circle => "circle",
        ConicClass::Point => "point",
        ConicClass::Empty => "empty",
    };
    let _ = writeln!(report, "class: {class}");
    let _ = writeln!(report, "center: {}", point(geometry.center));
    let _ = writeln!(report, "semi_major: {}", sig12(geometry.semi_major));
    let _ = writeln!(report, "semi_minor: {}", sig12(geometry.semi_minor));
    let _ = writeln!(report, "rotation: {}", sig12(geometry.rotation));
}

fn curve_points(geometry: &ConicGeometry) -> Vec<Point2> {
    (0..CURVE_SAMPLES)
        .map(|i| geometry.point_at(TAU * i as f64 / CURVE_SAMPLES as f64))
        .collect()
}

/// The isosceles triangle whose squared-distance locus is the given
/// canonical ellipse.
pub fn inverse(scene: &Scene, want_svg: bool, decorate: bool) -> Result<CommandOutput, CliError> {
    let (alpha2, beta2) = scene
        .ellipse
        .ok_or_else(|| CliError::Input("inverse needs 'ellipse' in the scene".into()))?;
    let ellipse = EllipseCanonical::new(alpha2, beta2)
        .map_err(|e| CliError::Input(format!("ellipse: {e}")))?;
    let (params, tri) = triangle_for_ellipse(&ellipse);
    let geometry = classify(&locus_conic(&tri, params.k))
        .map_err(|e| CliError::Input(format!("forward check: {e}")))?;

    let mut report = String::new();
    let _ = writeln!(report, "task: inverse");
    let _ = writeln!(
        report,
        "ellipse: alpha2 = {}, beta2 = {}",
        sig12(ellipse.alpha2()),
        sig12(ellipse.beta2())
    );
    let _ = writeln!(report, "a: {}", sig12(params.a));
    let _ = writeln!(report, "b: {}", sig12(params.b));
    let _ = writeln!(report, "k: {}", sig12(params.k));
    let _ = writeln!(report, "vertical_shift: {}", sig12(params.vertical_shift));
    for v in tri.vertices() {
        let _ = writeln!(report, "vertex: {}", point(v));
    }
    let class = match geometry.class {
        ConicClass::Circle => "circle",
        _ => "ellipse",
    };
    let _ = writeln!(report, "locus class: {class}");

    let svg = want_svg.then(|| {
        let mut figure = Figure::new();
        figure.add_polygon(tri.polygon(), false);
        figure.add_curve(curve_points(&geometry));
        if decorate {
            figure.add_decorations(tri.polygon().sides(), geometry.point_at(FRAC_PI_4));
        }
        figure.render(scene.size, scene.margin)
    });

    Ok(CommandOutput { report, svg })
}

/// Re-checks every closed-form answer implied by the scene against sampled
/// fields. `perturb` injects an error into the computed answers so the
/// failure path can be exercised deliberately.
pub fn verify(
    scene: &Scene,
    resolution: u32,
    perturb: Option<f64>,
    want_dump: bool,
) -> Result<VerifyOutput, CliError> {
    let delta = perturb.unwrap_or(0.0);
    let budget = RESIDUAL_BUDGET_512 * 512.0 / resolution as f64;
    let mut report = String::new();
    let _ = writeln!(report, "task: verify");
    let _ = writeln!(report, "resolution: {resolution}");
    let mut passed = true;
    let mut field_csv = None;
    let mut ran_any = false;

    let record = |report: &mut String, name: &str, residual: f64, budget: f64| -> bool {
        let ok = residual <= budget;
        let verdict = if ok { "pass" } else { "fail" };
        let _ = writeln!(
            report,
            "check {name}: residual {:.3e} budget {:.3e} -> {verdict}",
            residual, budget
        );
        ok
    };

    if let Some(level) = scene.leg_sum {
        let poly = scene.polygon()?;
        let field = sample_linear_field(&poly, resolution);
        let f = distance_sum_functional(&poly);
        let agreement = interior_agreement(&field, &poly, |p| f.value(p));
        passed &= record(&mut report, "linear-node-agreement", agreement, AGREEMENT_BUDGET);

        let target = level + delta;
        match level_segment(&poly, level).kind {
            HabitatKind::Segment(a, b) => {
                // Probe slightly inside the segment: interpolation cells
                // that straddle the polygon boundary see the kink of the
                // unsigned-distance field, which is an artifact of the
                // grid, not of the answer.
                let probes = [
                    pull_towards(a, b, 2.0 * field.cell()),
                    a.midpoint(b),
                    pull_towards(b, a, 2.0 * field.cell()),
                ];
                let residual = contour_residual(&field, &probes, target).map_err(grid_err)?;
                passed &= record(&mut report, "habitat-contour", residual, budget);
            }
            HabitatKind::Point(p) => {
                // A vertex habitat has no interior to retreat into; allow
                // for the kink of up to two boundary sides in its cell.
                let allowance = budget.max(8.0 * field.cell());
                let residual = contour_residual(&field, &[p], target).map_err(grid_err)?;
                passed &= record(&mut report, "habitat-contour", residual, allowance);
            }
            HabitatKind::Everywhere => {
                let residual = interior_deviation(&field, &poly, target);
                passed &= record(&mut report, "habitat-constant", residual, budget);
            }
            HabitatKind::Empty => {
                let gap = interior_gap(&field, &poly, target);
                let ok = gap > budget;
                passed &= ok;
                let verdict = if ok { "pass" } else { "fail" };
                let _ = writeln!(
                    report,
                    "check habitat-empty-gap: gap {gap:.3e} budget {budget:.3e} -> {verdict}"
                );
            }
        }
        if want_dump && field_csv.is_none() {
            field_csv = Some(to_csv(&field)?);
        }
        ran_any = true;
    }

    if let Some(k) = scene.squares_sum {
        let tri = scene.triangle()?;
        let mut conic = locus_conic(&tri, k);
        conic = ConicCoefficients { a: conic.a + delta, ..conic };
        let geometry =
            classify(&conic).map_err(|e| CliError::Input(format!("locus verify: {e}")))?;
        ran_any = true;
        match geometry.class {
            ConicClass::Ellipse | ConicClass::Circle => {
                let points: Vec<Point2> = (0..CONTOUR_SAMPLES)
                    .map(|i| geometry.point_at(TAU * i as f64 / CONTOUR_SAMPLES as f64))
                    .collect();
                let field = sample_quadratic_field_covering(
                    &tri,
                    Bounds::of_points(&points),
                    resolution,
                );
                let q = squared_distance_sum(&tri);
                let agreement = node_agreement(&field, |p| q.value(p));
                passed &= record(
                    &mut report,
                    "quadratic-node-agreement",
                    agreement,
                    AGREEMENT_BUDGET,
                );
                let residual = contour_residual(&field, &points, k).map_err(grid_err)?;
                passed &= record(&mut report, "locus-contour", residual, budget);
                if want_dump && field_csv.is_none() {
                    field_csv = Some(to_csv(&field)?);
                }
            }
            ConicClass::Point | ConicClass::Empty => {
                let field = sample_quadratic_field_covering(
                    &tri,
                    Bounds::of_points(&[geometry.center]),
                    resolution,
                );
                let residual = if geometry.class == ConicClass::Point {
                    (field.interpolate(geometry.center).map_err(grid_err)? - k).abs()
                } else {
                    // Below the minimum: the level must stay unattained.
                    let min = field
                        .interpolate(geometry.center)
                        .map_err(grid_err)?
                        .min(squared_distance_sum(&tri).min_value());
                    (k - min).max(0.0)
                };
                passed &= record(&mut report, "locus-degenerate", residual, budget);
                if want_dump && field_csv.is_none() {
                    field_csv = Some(to_csv(&field)?);
                }
            }
        }
    }

    if let Some((alpha2, beta2)) = scene.ellipse {
        let ellipse = EllipseCanonical::new(alpha2, beta2)
            .map_err(|e| CliError::Input(format!("ellipse: {e}")))?;
        let (params, tri) = triangle_for_ellipse(&ellipse);
        let target = params.k + delta;
        let alpha = ellipse.semi_major();
        let beta = ellipse.semi_minor();
        let points: Vec<Point2> = (0..CONTOUR_SAMPLES)
            .map(|i| {
                let theta = TAU * i as f64 / CONTOUR_SAMPLES as f64;
                Point2::new(alpha * theta.cos(), beta * theta.sin())
            })
            .collect();
        let field =
            sample_quadratic_field_covering(&tri, Bounds::of_points(&points), resolution);
        let residual = contour_residual(&field, &points, target).map_err(grid_err)?;
        passed &= record(&mut report, "inverse-contour", residual, budget);
        if want_dump && field_csv.is_none() {
            field_csv = Some(to_csv(&field)?);
        }
        ran_any = true;
    }

    if !ran_any {
        return Err(CliError::Input(
            "verify needs leg_sum, squares_sum, or ellipse in the scene".into(),
        ));
    }
    let _ = writeln!(report, "verify: {}", if passed { "pass" } else { "fail" });
    Ok(VerifyOutput { report, passed, field_csv })
}

fn grid_err(e: trilocus::Error) -> CliError {
    CliError::Input(format!("verification grid: {e}"))
}

// Moves `from` towards `to` by `distance`, capped at the midpoint.
fn pull_towards(from: Point2, to: Point2, distance: f64) -> Point2 {
    let span = (to - from).norm();
    if span == 0.0 {
        return from;
    }
    from + (to - from) * (distance / span).min(0.5)
}

fn to_csv(field: &FieldSample) -> Result<String, CliError> {
    let mut out = Vec::new();
    field
        .write_csv(&mut out)
        .map_err(|e| CliError::Input(format!("field dump: {e}")))?;
    String::from_utf8(out).map_err(|e| CliError::Input(format!("field dump: {e}")))
}

// Worst relative mismatch between grid values and the closed form at nodes
// strictly inside the polygon (outside, the unsigned sum no longer equals
// the affine formula).
fn interior_agreement(
    field: &FieldSample,
    poly: &ConvexPolygon,
    reference: impl Fn(Point2) -> f64,
) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..field.rows() {
        for j in 0..field.cols() {
            let p = field.node(i, j);
            if poly.contains(p, 1e-12) == Containment::Inside {
                let v = field.value(i, j);
                worst = worst.max((v - reference(p)).abs() / v.abs().max(1.0));
            }
        }
    }
    worst
}

// Worst relative mismatch over every grid node (the squared sum matches the
// quadratic form on the whole plane).
fn node_agreement(field: &FieldSample, reference: impl Fn(Point2) -> f64) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..field.rows() {
        for j in 0..field.cols() {
            let v = field.value(i, j);
            worst = worst.max((v - reference(field.node(i, j))).abs() / v.abs().max(1.0));
        }
    }
    worst
}

fn interior_deviation(field: &FieldSample, poly: &ConvexPolygon, level: f64) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..field.rows() {
        for j in 0..field.cols() {
            if poly.contains(field.node(i, j), 1e-12) == Containment::Inside {
                worst = worst.max((field.value(i, j) - level).abs());
            }
        }
    }
    worst
}

// Smallest distance from the level to any attained interior value.
fn interior_gap(field: &FieldSample, poly: &ConvexPolygon, level: f64) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..field.rows() {
        for j in 0..field.cols() {
            if poly.contains(field.node(i, j), 1e-12) == Containment::Inside {
                best = best.min((field.value(i, j) - level).abs());
            }
        }
    }
    best
}
