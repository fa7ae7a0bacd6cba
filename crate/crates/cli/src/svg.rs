//! Minimal deterministic SVG figures: a polygon, its level sets, conic loci,
//! and optional perpendicular-feet decorations.
//!
//! The y axis is flipped so figures read math-up; the viewBox is the
//! bounding box of everything drawn plus a margin fraction.

use trilocus::{Bounds, ConvexPolygon, OrientedLine, Point2};

use crate::report::sig12;

const DEFAULT_SIZE: f64 = 800.0;
const DEFAULT_MARGIN: f64 = 0.1;

enum Shape {
    Outline(Vec<Point2>),
    Highlight(Vec<Point2>),
    Curve(Vec<Point2>),
    Accent(Point2, Point2),
    Level(Point2, Point2),
    Leg(Point2, Point2),
    Marker(Point2),
    Foot(Point2),
}

pub struct Figure {
    shapes: Vec<Shape>,
}

impl Figure {
    pub fn new() -> Figure {
        Figure { shapes: Vec::new() }
    }

    /// Polygon boundary; `highlight` fills it as an "everywhere" habitat.
    pub fn add_polygon(&mut self, poly: &ConvexPolygon, highlight: bool) {
        let points = poly.vertices().to_vec();
        self.shapes.push(if highlight {
            Shape::Highlight(points)
        } else {
            Shape::Outline(points)
        });
    }

    /// Closed curve through the given points (used for conic loci).
    pub fn add_curve(&mut self, points: Vec<Point2>) {
        self.shapes.push(Shape::Curve(points));
    }

    /// The habitat segment itself.
    pub fn add_accent_segment(&mut self, a: Point2, b: Point2) {
        self.shapes.push(Shape::Accent(a, b));
    }

    /// One member of a parallel decomposition.
    pub fn add_level_segment(&mut self, a: Point2, b: Point2) {
        self.shapes.push(Shape::Level(a, b));
    }

    pub fn add_marker(&mut self, p: Point2) {
        self.shapes.push(Shape::Marker(p));
    }

    /// Perpendicular feet from `probe` onto every side line.
    pub fn add_decorations(&mut self, sides: &[OrientedLine], probe: Point2) {
        for side in sides {
            let foot = side.project(probe);
            self.shapes.push(Shape::Leg(probe, foot));
            self.shapes.push(Shape::Foot(foot));
        }
        self.shapes.push(Shape::Marker(probe));
    }

    fn bounds(&self) -> Bounds {
        let mut points = Vec::new();
        for shape in &self.shapes {
            match shape {
                Shape::Outline(ps) | Shape::Highlight(ps) | Shape::Curve(ps) => {
                    points.extend_from_slice(ps)
                }
                Shape::Accent(a, b) | Shape::Level(a, b) | Shape::Leg(a, b) => {
                    points.push(*a);
                    points.push(*b);
                }
                Shape::Marker(p) | Shape::Foot(p) => points.push(*p),
            }
        }
        if points.is_empty() {
            points.push(Point2::new(0.0, 0.0));
        }
        Bounds::of_points(&points)
    }

    /// Renders the figure; `size` is the pixel width, `margin` the padding
    /// fraction of the larger bounding-box dimension.
    pub fn render(&self, size: Option<f64>, margin: Option<f64>) -> String {
        let size = size.unwrap_or(DEFAULT_SIZE);
        let margin = margin.unwrap_or(DEFAULT_MARGIN);
        let bounds = self.bounds();
        let pad = (margin * bounds.width().max(bounds.height())).max(1e-3);
        let scale = size / (bounds.width() + 2.0 * pad);
        let height = (bounds.height() + 2.0 * pad) * scale;
        let map = |p: Point2| {
            (
                (p.x - bounds.min.x + pad) * scale,
                (bounds.max.y - p.y + pad) * scale,
            )
        };

        let mut out = String::new();
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
             viewBox=\"0 0 {} {}\">\n",
            sig12(size),
            sig12(height),
            sig12(size),
            sig12(height)
        ));
        for shape in &self.shapes {
            match shape {
                Shape::Outline(ps) => out.push_str(&path(
                    ps,
                    map,
                    "fill=\"#eef2f7\" stroke=\"#334155\" stroke-width=\"2\"",
                )),
                Shape::Highlight(ps) => out.push_str(&path(
                    ps,
                    map,
                    "fill=\"#fde68a\" stroke=\"#334155\" stroke-width=\"2\"",
                )),
                Shape::Curve(ps) => out.push_str(&path(
                    ps,
                    map,
                    "fill=\"none\" stroke=\"#2563eb\" stroke-width=\"2\"",
                )),
                Shape::Accent(a, b) => {
                    out.push_str(&line(*a, *b, map, "stroke=\"#dc2626\" stroke-width=\"3\""))
                }
                Shape::Level(a, b) => {
                    out.push_str(&line(*a, *b, map, "stroke=\"#94a3b8\" stroke-width=\"1\""))
                }
                Shape::Leg(a, b) => out.push_str(&line(
                    *a,
                    *b,
                    map,
                    "stroke=\"#059669\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"",
                )),
                Shape::Marker(p) => out.push_str(&circle(*p, map, 5.0, "fill=\"#dc2626\"")),
                Shape::Foot(p) => out.push_str(&circle(*p, map, 3.0, "fill=\"#059669\"")),
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn path(points: &[Point2], map: impl Fn(Point2) -> (f64, f64), style: &str) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let (x, y) = map(*p);
        d.push_str(if i == 0 { "M " } else { " L " });
        d.push_str(&sig12(x));
        d.push(' ');
        d.push_str(&sig12(y));
    }
    d.push_str(" Z");
    format!("  <path d=\"{d}\" {style}/>\n")
}

fn line(a: Point2, b: Point2, map: impl Fn(Point2) -> (f64, f64), style: &str) -> String {
    let (x1, y1) = map(a);
    let (x2, y2) = map(b);
    format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {style}/>\n",
        sig12(x1),
        sig12(y1),
        sig12(x2),
        sig12(y2)
    )
}

fn circle(p: Point2, map: impl Fn(Point2) -> (f64, f64), r: f64, style: &str) -> String {
    let (cx, cy) = map(p);
    format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" {style}/>\n",
        sig12(cx),
        sig12(cy),
        sig12(r)
    )
}
