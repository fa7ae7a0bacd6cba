//! Flat key-value scene files.
//!
//! One statement per line, `key = value`, `#` starts a comment:
//!
//! ```text
//! # right triangle with a prescribed leg sum
//! vertex = 0 0
//! vertex = 0 3
//! vertex = 4 0
//! leg_sum = 3.16743
//! ```
//!
//! Recognized keys: `vertex` (repeatable, two coordinates), `leg_sum`,
//! `squares_sum`, `ellipse` (alpha2 beta2), `size`, `margin`, `decorate`.

use trilocus::{ConvexPolygon, Point2, Triangle};

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    pub vertices: Vec<Point2>,
    pub leg_sum: Option<f64>,
    pub squares_sum: Option<f64>,
    pub ellipse: Option<(f64, f64)>,
    pub size: Option<f64>,
    pub margin: Option<f64>,
    pub decorate: bool,
}

impl Scene {
    pub fn parse(text: &str) -> Result<Scene, CliError> {
        let mut scene = Scene::default();
        for (index, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let number = index + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| input_error(number, "expected 'key = value'"))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "vertex" => {
                    let (x, y) = parse_pair(number, value)?;
                    scene.vertices.push(Point2::new(x, y));
                }
                "leg_sum" => set_scalar(&mut scene.leg_sum, number, key, value)?,
                "squares_sum" => set_scalar(&mut scene.squares_sum, number, key, value)?,
                "ellipse" => {
                    if scene.ellipse.is_some() {
                        return Err(input_error(number, "duplicate key 'ellipse'"));
                    }
                    scene.ellipse = Some(parse_pair(number, value)?);
                }
                "size" => set_scalar(&mut scene.size, number, key, value)?,
                "margin" => set_scalar(&mut scene.margin, number, key, value)?,
                "decorate" => {
                    scene.decorate = match value {
                        "true" => true,
                        "false" => false,
                        _ => return Err(input_error(number, "decorate must be true or false")),
                    };
                }
                other => {
                    return Err(CliError::Input(format!(
                        "scene line {number}: unknown key '{other}'"
                    )))
                }
            }
        }
        if let Some(size) = scene.size {
            if size <= 0.0 {
                return Err(CliError::Input("scene: size must be positive".into()));
            }
        }
        if let Some(margin) = scene.margin {
            if !(0.0..=2.0).contains(&margin) {
                return Err(CliError::Input("scene: margin must lie in [0, 2]".into()));
            }
        }
        Ok(scene)
    }

    pub fn polygon(&self) -> Result<ConvexPolygon, CliError> {
        ConvexPolygon::new(&self.vertices)
            .map_err(|e| CliError::Input(format!("scene polygon: {e}")))
    }

    pub fn triangle(&self) -> Result<Triangle, CliError> {
        if self.vertices.len() != 3 {
            return Err(CliError::Input(format!(
                "this task needs a triangle, scene has {} vertices",
                self.vertices.len()
            )));
        }
        Triangle::from_polygon(self.polygon()?)
            .map_err(|e| CliError::Input(format!("scene triangle: {e}")))
    }
}

fn input_error(line: usize, message: &str) -> CliError {
    CliError::Input(format!("scene line {line}: {message}"))
}

fn parse_number(line: usize, token: &str) -> Result<f64, CliError> {
    let value: f64 = token
        .parse()
        .map_err(|_| input_error(line, "malformed number"))?;
    if !value.is_finite() {
        return Err(input_error(line, "numbers must be finite"));
    }
    Ok(value)
}

fn parse_pair(line: usize, value: &str) -> Result<(f64, f64), CliError> {
    let mut parts = value.split_whitespace();
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(input_error(line, "expected exactly two numbers"));
    };
    Ok((parse_number(line, a)?, parse_number(line, b)?))
}

fn set_scalar(
    slot: &mut Option<f64>,
    line: usize,
    key: &str,
    value: &str,
) -> Result<(), CliError> {
    if slot.is_some() {
        return Err(CliError::Input(format!(
            "scene line {line}: duplicate key '{key}'"
        )));
    }
    *slot = Some(parse_number(line, value)?);
    Ok(())
}
