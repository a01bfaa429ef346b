//! 2D computational geometry: Delaunay triangulation, characteristic-shape
//! boundaries, polygon predicates and contour merging.

mod contour;
mod delaunay;
mod point;
mod polygon;
mod predicates;
mod shape;
pub mod wkt;

pub use contour::{merge_contours, Contour};
pub use delaunay::{delaunay, Triangulation};
pub use point::{BBox, Point2D};
pub use polygon::{min_vertex_distance, point_in_polygon, polygons_intersect, Location, Polygon};
pub use predicates::{orient2d, segments_properly_intersect};
pub use shape::{characteristic_shape, DEFAULT_LAMBDA};

/// Relative tolerance for boundary and circumcircle tests, scaled by the
/// bounding-box diagonal of the geometry involved.
pub const GEO_TOLERANCE: f64 = 1e-9;

/// Relative half-size of the square emitted for clusters too small to
/// triangulate, scaled by the bounding-box diagonal of the fragment.
pub const DEGENERATE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("non-finite coordinate")]
    NonFinite,
}
