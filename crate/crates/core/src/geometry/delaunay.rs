use alloc::vec::Vec;

use super::{GeometryError, Point2D};

pub(crate) const NO_TWIN: usize = delaunator::EMPTY;

/// Delaunay triangulation of a set of distinct points.
#[derive(Clone, Debug)]
pub struct Triangulation {
    /// Distinct input points, in lexicographic order.
    pub vertices: Vec<Point2D>,
    /// Counter-clockwise vertex triples (y axis pointing up).
    pub triangles: Vec<[usize; 3]>,
    /// Convex hull as a closed counter-clockwise cycle of directed edges.
    pub boundary_edges: Vec<(usize, usize)>,
    /// Flat triangle corner array; corner `h` starts the directed edge
    /// `corners[h] -> corners[next(h)]`. Triangles here are clockwise with
    /// the y axis up, so the interior lies to the right of each edge.
    pub(crate) corners: Vec<usize>,
    /// Twin of each directed edge in the neighbouring triangle, or [`NO_TWIN`].
    pub(crate) halfedges: Vec<usize>,
}

#[inline]
pub(crate) fn next_halfedge(h: usize) -> usize {
    if h % 3 == 2 {
        h - 2
    } else {
        h + 1
    }
}

#[inline]
pub(crate) fn prev_halfedge(h: usize) -> usize {
    if h.is_multiple_of(3) {
        h + 2
    } else {
        h - 1
    }
}

/// Sorts and removes exact duplicates.
pub(crate) fn distinct_points(points: &[Point2D]) -> Result<Vec<Point2D>, GeometryError> {
    if !points.iter().all(Point2D::is_finite) {
        return Err(GeometryError::NonFinite);
    }
    let mut pts = points.to_vec();
    pts.sort_unstable_by(Point2D::lex_cmp);
    pts.dedup();
    Ok(pts)
}

/// Triangulates `points` after removing exact duplicates.
///
/// Fails with [`GeometryError::DegenerateInput`] when fewer than three
/// distinct points remain or all of them are collinear.
pub fn delaunay(points: &[Point2D]) -> Result<Triangulation, GeometryError> {
    let vertices = distinct_points(points)?;
    triangulate_distinct(vertices)
}

pub(crate) fn triangulate_distinct(vertices: Vec<Point2D>) -> Result<Triangulation, GeometryError> {
    if vertices.len() < 3 {
        return Err(GeometryError::DegenerateInput(
            "fewer than 3 distinct points",
        ));
    }
    let input: Vec<delaunator::Point> = vertices
        .iter()
        .map(|p| delaunator::Point { x: p.x, y: p.y })
        .collect();
    let tri = delaunator::triangulate(&input);
    if tri.triangles.is_empty() {
        return Err(GeometryError::DegenerateInput("all points collinear"));
    }
    let triangles = tri
        .triangles
        .chunks_exact(3)
        .map(|t| [t[0], t[2], t[1]])
        .collect();
    let hull: Vec<usize> = tri.hull.iter().rev().copied().collect();
    let boundary_edges = (0..hull.len())
        .map(|i| (hull[i], hull[(i + 1) % hull.len()]))
        .collect();
    Ok(Triangulation {
        vertices,
        triangles,
        boundary_edges,
        corners: tri.triangles,
        halfedges: tri.halfedges,
    })
}

impl Triangulation {
    /// Length of every undirected edge, each listed once.
    pub fn edge_lengths(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.corners.len()).filter_map(move |h| {
            let twin = self.halfedges[h];
            (twin == NO_TWIN || h < twin).then(|| self.halfedge_length(h))
        })
    }

    pub(crate) fn halfedge_length(&self, h: usize) -> f64 {
        let a = self.vertices[self.corners[h]];
        let b = self.vertices[self.corners[next_halfedge(h)]];
        a.dist(&b)
    }
}
