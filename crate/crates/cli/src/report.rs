//! Deterministic number formatting for reports and figures.

use trilocus::Point2;

/// Formats with 12 significant digits in positional notation, locale
/// independent. Identical inputs always yield identical bytes.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        // Covers -0.0 as well.
        return "0.00000000000".to_string();
    }
    let sci = format!("{:.11e}", x);
    let exp: i32 = sci[sci.find('e').expect("exponent marker") + 1..]
        .parse()
        .expect("well-formed exponent");
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn point(p: Point2) -> String {
    format!("({}, {})", sig12(p.x), sig12(p.y))
}
