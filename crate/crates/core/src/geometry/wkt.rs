//! WKT text form of polygons and contour records.
//!
//! A polygon is written as `POLYGON ((x1 y1, x2 y2, ..., x1 y1))` with every
//! coordinate rounded to 9 significant digits. A contour record prefixes the
//! polygon with `point_count;density;`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{GeometryError, Point2D, Polygon};

/// Rounds `v` to 9 significant digits.
pub fn round_sig9(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let mut buf = String::new();
    let _ = write!(buf, "{v:.8e}");
    buf.parse().unwrap_or(v)
}

/// Shortest decimal text that reads back as `round_sig9(v)`.
pub fn fmt_sig9(v: f64) -> String {
    let mut s = String::new();
    push_sig9(&mut s, v);
    s
}

fn push_sig9(out: &mut String, v: f64) {
    let _ = write!(out, "{}", round_sig9(v));
}

pub fn polygon_to_wkt(p: &Polygon) -> String {
    let mut s = String::with_capacity(16 + p.len() * 22);
    s.push_str("POLYGON ((");
    let ring = p.vertices();
    for (i, v) in ring.iter().chain(ring.first()).enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        push_sig9(&mut s, v.x);
        s.push(' ');
        push_sig9(&mut s, v.y);
    }
    s.push_str("))");
    s
}

pub fn parse_polygon(text: &str) -> Result<Polygon, GeometryError> {
    const BAD: GeometryError = GeometryError::InvalidPolygon("malformed WKT");
    let body = text
        .trim()
        .strip_prefix("POLYGON")
        .ok_or(BAD)?
        .trim()
        .strip_prefix("((")
        .and_then(|b| b.strip_suffix("))"))
        .ok_or(BAD)?;
    let ring = body
        .split(',')
        .map(|pair| {
            let mut it = pair.split_whitespace();
            let x = it.next().and_then(|t| t.parse().ok());
            let y = it.next().and_then(|t| t.parse().ok());
            match (x, y, it.next()) {
                (Some(x), Some(y), None) => Ok(Point2D::new(x, y)),
                _ => Err(BAD),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Polygon::new(ring)
}

/// `point_count;density;WKT`, without a trailing newline.
pub fn contour_record(point_count: usize, density: f64, polygon: &Polygon) -> String {
    let mut s = String::new();
    let _ = write!(s, "{point_count};");
    push_sig9(&mut s, density);
    s.push(';');
    s.push_str(&polygon_to_wkt(polygon));
    s
}

/// Splits a contour record into its point count, density and polygon.
pub fn parse_contour_record(line: &str) -> Result<(usize, f64, Polygon), GeometryError> {
    const BAD: GeometryError = GeometryError::InvalidPolygon("malformed contour record");
    let mut parts = line.splitn(3, ';');
    let count = parts
        .next()
        .and_then(|t| t.trim().parse().ok())
        .ok_or(BAD)?;
    let density = parts
        .next()
        .and_then(|t| t.trim().parse().ok())
        .ok_or(BAD)?;
    let polygon = parse_polygon(parts.next().ok_or(BAD)?)?;
    Ok((count, density, polygon))
}
