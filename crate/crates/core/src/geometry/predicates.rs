use super::Point2D;

/// Twice the signed area of the triangle `abc`; positive when counter-clockwise.
///
/// Uses adaptive-precision arithmetic, so the sign is exact even for nearly
/// collinear input.
#[inline]
pub fn orient2d(a: Point2D, b: Point2D, c: Point2D) -> f64 {
    robust::orient2d(coord(a), coord(b), coord(c))
}

#[inline]
fn coord(p: Point2D) -> robust::Coord<f64> {
    robust::Coord { x: p.x, y: p.y }
}

/// True when the open segments `ab` and `cd` cross at a single interior point.
pub fn segments_properly_intersect(a: Point2D, b: Point2D, c: Point2D, d: Point2D) -> bool {
    let o1 = orient2d(a, b, c);
    let o2 = orient2d(a, b, d);
    let o3 = orient2d(c, d, a);
    let o4 = orient2d(c, d, b);
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

/// Squared distance from `p` to the closed segment `ab`.
pub fn point_segment_dist2(p: Point2D, a: Point2D, b: Point2D) -> f64 {
    let abx = b.x - a.x;
    let aby = b.y - a.y;
    let len2 = abx * abx + aby * aby;
    if len2 == 0.0 {
        return p.dist2(&a);
    }
    let t = (((p.x - a.x) * abx + (p.y - a.y) * aby) / len2).clamp(0.0, 1.0);
    let q = Point2D::new(a.x + t * abx, a.y + t * aby);
    p.dist2(&q)
}
