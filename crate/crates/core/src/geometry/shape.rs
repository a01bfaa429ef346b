//! Characteristic shapes: non-convex boundaries carved out of a Delaunay
//! triangulation by peeling long boundary edges.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use hashbrown::HashMap;

use super::delaunay::{next_halfedge, prev_halfedge, NO_TWIN};
use super::{delaunay, GeometryError, Point2D, Polygon, Triangulation};

/// Default normalized edge-length threshold.
pub const DEFAULT_LAMBDA: f64 = 0.3;

struct Candidate {
    length: f64,
    halfedge: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate {}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Candidate {
    // Longest first; ties go to the lower halfedge index.
    fn cmp(&self, other: &Self) -> Ordering {
        self.length
            .total_cmp(&other.length)
            .then_with(|| other.halfedge.cmp(&self.halfedge))
    }
}

/// Boundary polygon of `points` whose vertices are input points.
///
/// Starting from the convex hull of the Delaunay triangulation, the longest
/// boundary edge is removed (together with its triangle) while it is longer
/// than `l_min + lambda_norm * (l_max - l_min)`, where the extremes range
/// over every triangulation edge. An edge is only removed when the vertex
/// opposite it is not already on the boundary, which keeps the result a
/// simple polygon that still covers every input point.
///
/// `lambda_norm = 1` yields the convex hull.
pub fn characteristic_shape(
    points: &[Point2D],
    lambda_norm: f64,
) -> Result<Polygon, GeometryError> {
    if !(0.0..=1.0).contains(&lambda_norm) {
        return Err(GeometryError::InvalidParameter(
            "lambda_norm outside [0, 1]",
        ));
    }
    let tri = delaunay(points)?;
    Ok(carve(&tri, lambda_norm))
}

pub(crate) fn carve(tri: &Triangulation, lambda_norm: f64) -> Polygon {
    let (mut l_min, mut l_max) = (f64::INFINITY, 0.0f64);
    for len in tri.edge_lengths() {
        l_min = l_min.min(len);
        l_max = l_max.max(len);
    }
    // Rounding in the interpolation can land just below l_max.
    let threshold = if lambda_norm >= 1.0 {
        l_max
    } else {
        l_min + lambda_norm * (l_max - l_min)
    };

    let n_half = tri.corners.len();
    let mut removed = vec![false; n_half / 3];
    let mut on_boundary = vec![false; tri.vertices.len()];
    let mut heap = BinaryHeap::new();

    for h in 0..n_half {
        if tri.halfedges[h] == NO_TWIN {
            on_boundary[tri.corners[h]] = true;
            let length = tri.halfedge_length(h);
            if length > threshold {
                heap.push(Candidate {
                    length,
                    halfedge: h,
                });
            }
        }
    }

    while let Some(Candidate { halfedge: h, .. }) = heap.pop() {
        let t = h / 3;
        if removed[t] {
            continue;
        }
        let opposite = tri.corners[prev_halfedge(h)];
        if on_boundary[opposite] {
            continue;
        }
        removed[t] = true;
        on_boundary[opposite] = true;
        for e in [next_halfedge(h), prev_halfedge(h)] {
            // Both exist: an interior opposite vertex means both edges were interior.
            let twin = tri.halfedges[e];
            let length = tri.halfedge_length(twin);
            if length > threshold {
                heap.push(Candidate {
                    length,
                    halfedge: twin,
                });
            }
        }
    }

    let mut successor: HashMap<usize, usize> = HashMap::new();
    let mut start = None;
    for h in 0..n_half {
        if removed[h / 3] {
            continue;
        }
        let twin = tri.halfedges[h];
        if twin == NO_TWIN || removed[twin / 3] {
            let from = tri.corners[h];
            successor.insert(from, tri.corners[next_halfedge(h)]);
            start.get_or_insert(from);
        }
    }

    let start = start.expect("triangulation has at least one triangle");
    let mut ring = Vec::with_capacity(successor.len());
    let mut v = start;
    loop {
        ring.push(tri.vertices[v]);
        v = successor[&v];
        if v == start {
            break;
        }
    }
    debug_assert_eq!(ring.len(), successor.len());
    ring.reverse();
    Polygon::from_ccw_ring(ring)
}
