//! Brute-force field sampling used to cross-check the closed-form answers.
//!
//! Fields are evaluated from raw vertex data only (point-to-line distance via
//! the cross product), never through [`AffineDistanceSum`] or
//! [`QuadraticDistanceSum`], so agreement between the two routes is evidence
//! rather than tautology.
//!
//! [`AffineDistanceSum`]: crate::linear::AffineDistanceSum
//! [`QuadraticDistanceSum`]: crate::quadratic::QuadraticDistanceSum

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{Bounds, ConvexPolygon, Point2, Triangle};

/// A scalar field sampled on a uniform square grid.
///
/// `resolution` counts grid nodes per unit length (`cell = 1 / resolution`),
/// so the residual budget of a comparison scales with the input rather than
/// with its bounding box. The grid covers the requested region expanded by
/// one cell on every side.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSample {
    origin: Point2,
    cell: f64,
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl FieldSample {
    fn over(region: Bounds, resolution: u32, eval: impl Fn(Point2) -> f64 + Sync) -> FieldSample {
        assert!(resolution >= 8, "resolution below 8 is too coarse to be useful");
        let cell = 1.0 / resolution as f64;
        let origin = Point2::new(region.min.x - cell, region.min.y - cell);
        let cols = ((region.width() + 2.0 * cell) / cell).ceil() as usize + 1;
        let rows = ((region.height() + 2.0 * cell) / cell).ceil() as usize + 1;

        let mut values = vec![0.0; rows * cols];
        values
            .par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, row)| {
                let y = origin.y + i as f64 * cell;
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot = eval(Point2::new(origin.x + j as f64 * cell, y));
                }
            });
        FieldSample { origin, cell, rows, cols, values }
    }

    pub fn origin(&self) -> Point2 {
        self.origin
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    /// Position of grid node `(row, col)`.
    pub fn node(&self, row: usize, col: usize) -> Point2 {
        Point2::new(
            self.origin.x + col as f64 * self.cell,
            self.origin.y + row as f64 * self.cell,
        )
    }

    /// Bilinear interpolation of the field at `p`.
    pub fn interpolate(&self, p: Point2) -> Result<f64> {
        let gx = (p.x - self.origin.x) / self.cell;
        let gy = (p.y - self.origin.y) / self.cell;
        if gx < 0.0 || gy < 0.0 || gx > (self.cols - 1) as f64 || gy > (self.rows - 1) as f64 {
            return Err(Error::PointOutsideGrid);
        }
        let j0 = (gx.floor() as usize).min(self.cols - 2);
        let i0 = (gy.floor() as usize).min(self.rows - 2);
        let u = gx - j0 as f64;
        let v = gy - i0 as f64;
        let f00 = self.value(i0, j0);
        let f01 = self.value(i0, j0 + 1);
        let f10 = self.value(i0 + 1, j0);
        let f11 = self.value(i0 + 1, j0 + 1);
        Ok(f00 * (1.0 - u) * (1.0 - v) + f01 * u * (1.0 - v) + f10 * (1.0 - u) * v + f11 * u * v)
    }

    /// Writes the sample as CSV: a header naming `origin_x, origin_y, cell,
    /// rows, cols`, those five values, then the grid row by row.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "origin_x,origin_y,cell,rows,cols")?;
        writeln!(
            w,
            "{},{},{},{},{}",
            self.origin.x, self.origin.y, self.cell, self.rows, self.cols
        )?;
        for row in self.values.chunks(self.cols) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }
}

// Distance from p to the infinite line through a and b, straight from the
// vertex data.
fn line_distance(a: Point2, b: Point2, p: Point2) -> f64 {
    let edge = b - a;
    (edge.cross(p - a)).abs() / edge.norm()
}

/// Samples the unsigned side-distance sum of `poly` over its padded bounding
/// box.
pub fn sample_linear_field(poly: &ConvexPolygon, resolution: u32) -> FieldSample {
    let vertices = poly.vertices().to_vec();
    let n = vertices.len();
    FieldSample::over(poly.bounds(), resolution, move |p| {
        (0..n)
            .map(|i| line_distance(vertices[i], vertices[(i + 1) % n], p))
            .sum()
    })
}

/// Samples the squared side-distance sum of `tri` over its padded bounding
/// box.
pub fn sample_quadratic_field(tri: &Triangle, resolution: u32) -> FieldSample {
    sample_quadratic_field_covering(tri, tri.polygon().bounds(), resolution)
}

/// Samples the squared side-distance sum over the union of the triangle's
/// bounding box and `extra` — the locus ellipse of a large level extends
/// beyond the triangle, so comparisons must request the wider region.
pub fn sample_quadratic_field_covering(
    tri: &Triangle,
    extra: Bounds,
    resolution: u32,
) -> FieldSample {
    let vertices = tri.vertices();
    let region = tri.polygon().bounds().union(extra);
    FieldSample::over(region, resolution, move |p| {
        (0..3)
            .map(|i| {
                let d = line_distance(vertices[i], vertices[(i + 1) % 3], p);
                d * d
            })
            .sum()
    })
}

/// Largest deviation `|interpolated field - level|` over the predicted
/// contour points.
pub fn contour_residual(field: &FieldSample, predicted: &[Point2], level: f64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for p in predicted {
        worst = worst.max((field.interpolate(*p)? - level).abs());
    }
    Ok(worst)
}
