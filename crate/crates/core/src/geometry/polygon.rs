use alloc::vec::Vec;

use super::predicates::{point_segment_dist2, segments_properly_intersect};
use super::{BBox, GeometryError, Point2D, GEO_TOLERANCE};

/// A simple polygon without holes, stored counter-clockwise.
///
/// The ring is implicitly closed: the last vertex connects back to the first
/// and is not repeated in storage.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    ring: Vec<Point2D>,
    bbox: BBox,
}

/// Where a point sits relative to a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

impl Location {
    /// Inside or on the boundary.
    pub fn is_covered(self) -> bool {
        !matches!(self, Location::Outside)
    }
}

impl Polygon {
    /// Builds a polygon from a ring in either orientation.
    ///
    /// A trailing copy of the first vertex is dropped. Clockwise rings are
    /// reversed. Simplicity is not checked here; see [`Polygon::is_simple`].
    pub fn new(mut ring: Vec<Point2D>) -> Result<Self, GeometryError> {
        if ring.len() > 1 && ring.first() == ring.last() {
            ring.pop();
        }
        if ring.len() < 3 {
            return Err(GeometryError::InvalidPolygon("fewer than 3 vertices"));
        }
        if !ring.iter().all(Point2D::is_finite) {
            return Err(GeometryError::NonFinite);
        }
        let area = signed_area(&ring);
        if area == 0.0 {
            return Err(GeometryError::InvalidPolygon("zero area"));
        }
        if area < 0.0 {
            ring.reverse();
        }
        Ok(Self::from_ccw_ring(ring))
    }

    pub(crate) fn from_ccw_ring(ring: Vec<Point2D>) -> Self {
        let bbox = BBox::of(&ring).expect("non-empty ring");
        Self { ring, bbox }
    }

    /// Axis-aligned rectangle; `min` strictly below and left of `max`.
    pub fn rectangle(min: Point2D, max: Point2D) -> Result<Self, GeometryError> {
        Polygon::new(alloc::vec![
            min,
            Point2D::new(max.x, min.y),
            max,
            Point2D::new(min.x, max.y),
        ])
    }

    pub fn vertices(&self) -> &[Point2D] {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.is_empty()
    }

    pub fn bbox(&self) -> &BBox {
        &self.bbox
    }

    /// Edges as `(start, end)` pairs, including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (Point2D, Point2D)> + '_ {
        let n = self.ring.len();
        (0..n).map(move |i| (self.ring[i], self.ring[(i + 1) % n]))
    }

    /// Shoelace area. Always positive for a valid polygon.
    pub fn area(&self) -> f64 {
        signed_area(&self.ring).abs()
    }

    pub fn centroid(&self) -> Point2D {
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a2 = 0.0;
        for (p, q) in self.edges() {
            let cross = p.x * q.y - q.x * p.y;
            a2 += cross;
            cx += (p.x + q.x) * cross;
            cy += (p.y + q.y) * cross;
        }
        Point2D::new(cx / (3.0 * a2), cy / (3.0 * a2))
    }

    /// Boundary tolerance used by [`point_in_polygon`].
    pub fn tolerance(&self) -> f64 {
        GEO_TOLERANCE * self.bbox.diagonal()
    }

    /// O(n²) check that no two non-adjacent edges touch and no vertex repeats.
    pub fn is_simple(&self) -> bool {
        let n = self.ring.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.ring[i] == self.ring[j] {
                    return false;
                }
            }
        }
        let tol2 = {
            let t = self.tolerance();
            t * t
        };
        for i in 0..n {
            let (a, b) = (self.ring[i], self.ring[(i + 1) % n]);
            for j in i + 1..n {
                let (c, d) = (self.ring[j], self.ring[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    continue;
                }
                if segments_properly_intersect(a, b, c, d)
                    || point_segment_dist2(c, a, b) <= tol2
                    || point_segment_dist2(d, a, b) <= tol2
                    || point_segment_dist2(a, c, d) <= tol2
                    || point_segment_dist2(b, c, d) <= tol2
                {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn signed_area(ring: &[Point2D]) -> f64 {
    let n = ring.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = ring[i];
        let q = ring[(i + 1) % n];
        acc += p.x * q.y - q.x * p.y;
    }
    acc / 2.0
}

/// Classifies `pt` by ray crossing, treating anything within the polygon's
/// tolerance of an edge as on the boundary.
pub fn point_in_polygon(pt: Point2D, poly: &Polygon) -> Location {
    let tol = poly.tolerance();
    if !poly.bbox.expanded(tol).contains(&pt) {
        return Location::Outside;
    }
    let tol2 = tol * tol;
    let mut inside = false;
    for (a, b) in poly.edges() {
        if point_segment_dist2(pt, a, b) <= tol2 {
            return Location::OnBoundary;
        }
        if (a.y > pt.y) != (b.y > pt.y) {
            let x_cross = a.x + (pt.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if pt.x < x_cross {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// True when the polygons share area or touch: some pair of edges crosses,
/// or a vertex of one lies inside or on the other.
pub fn polygons_intersect(a: &Polygon, b: &Polygon) -> bool {
    let margin = a.tolerance().max(b.tolerance());
    if !a.bbox.intersects(&b.bbox, margin) {
        return false;
    }
    if a.ring.iter().any(|&p| point_in_polygon(p, b).is_covered())
        || b.ring.iter().any(|&p| point_in_polygon(p, a).is_covered())
    {
        return true;
    }
    for (p, q) in a.edges() {
        let eb = BBox::of(&[p, q]).expect("two points");
        if !eb.intersects(&b.bbox, margin) {
            continue;
        }
        for (r, s) in b.edges() {
            if segments_properly_intersect(p, q, r, s) {
                return true;
            }
        }
    }
    false
}

/// Smallest Euclidean distance between a vertex of `a` and a vertex of `b`.
pub fn min_vertex_distance(a: &Polygon, b: &Polygon) -> f64 {
    libm::sqrt(min_vertex_dist2(a.vertices(), b.vertices()))
}

pub(crate) fn min_vertex_dist2(a: &[Point2D], b: &[Point2D]) -> f64 {
    // Sweep over x so that large rings stay cheap.
    let mut bs: Vec<Point2D> = b.to_vec();
    bs.sort_unstable_by(|p, q| p.x.total_cmp(&q.x));
    let mut best = f64::INFINITY;
    for p in a {
        let start = bs.partition_point(|q| q.x < p.x);
        for q in &bs[start..] {
            let dx = q.x - p.x;
            if dx * dx > best {
                break;
            }
            best = best.min(p.dist2(q));
        }
        for q in bs[..start].iter().rev() {
            let dx = p.x - q.x;
            if dx * dx > best {
                break;
            }
            best = best.min(p.dist2(q));
        }
    }
    best
}
