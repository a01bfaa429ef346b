use alloc::string::String;
use alloc::vec::Vec;

use super::delaunay::{distinct_points, triangulate_distinct};
use super::shape::carve;
use super::{wkt, BBox, GeometryError, Point2D, Polygon, DEGENERATE_TOLERANCE};

/// Boundary representative of one cluster: its outline, how many points it
/// stands for and their density over the enclosed area.
#[derive(Clone, Debug, PartialEq)]
pub struct Contour {
    pub polygon: Polygon,
    pub point_count: usize,
    /// `point_count / polygon.area()`.
    pub density: f64,
    pub source_node: usize,
    /// DBSCAN radius of the node that produced the contour, if any.
    pub eps_hint: Option<f64>,
}

impl Contour {
    pub fn new(
        polygon: Polygon,
        point_count: usize,
        source_node: usize,
        eps_hint: Option<f64>,
    ) -> Self {
        let density = point_count as f64 / polygon.area();
        Self {
            polygon,
            point_count,
            density,
            source_node,
            eps_hint,
        }
    }

    /// Outlines a cluster's points with [`characteristic_shape`](super::characteristic_shape).
    ///
    /// Clusters with fewer than three distinct or only collinear points get
    /// their bounding box grown by `degenerate_margin` on every side instead.
    pub fn from_points(
        points: &[Point2D],
        lambda_norm: f64,
        source_node: usize,
        eps_hint: Option<f64>,
        degenerate_margin: f64,
    ) -> Result<Self, GeometryError> {
        let polygon = outline(points, lambda_norm, degenerate_margin)?;
        Ok(Self::new(polygon, points.len(), source_node, eps_hint))
    }

    /// The serialized `point_count;density;WKT` record.
    pub fn to_record(&self) -> String {
        wkt::contour_record(self.point_count, self.density, &self.polygon)
    }

    /// Bytes needed to ship this contour as one record line.
    pub fn wire_bytes(&self) -> usize {
        self.to_record().len() + 1
    }
}

fn outline(
    points: &[Point2D],
    lambda_norm: f64,
    degenerate_margin: f64,
) -> Result<Polygon, GeometryError> {
    if !(0.0..=1.0).contains(&lambda_norm) {
        return Err(GeometryError::InvalidParameter(
            "lambda_norm outside [0, 1]",
        ));
    }
    let distinct = distinct_points(points)?;
    let bbox = BBox::of(&distinct).ok_or(GeometryError::DegenerateInput("empty cluster"))?;
    match triangulate_distinct(distinct) {
        Ok(tri) => Ok(carve(&tri, lambda_norm)),
        Err(GeometryError::DegenerateInput(_)) => {
            let margin = if degenerate_margin > 0.0 {
                degenerate_margin
            } else {
                DEGENERATE_TOLERANCE * bbox.diagonal().max(1.0)
            };
            let grown = bbox.expanded(margin);
            Polygon::rectangle(grown.min, grown.max)
        }
        Err(e) => Err(e),
    }
}

/// Merges a connected group of contours into one.
///
/// The new outline is the characteristic shape of all member vertices. Point
/// counts add up, density is recomputed over the new area, and the source is
/// the smallest member node id. A single-member group is returned unchanged.
pub fn merge_contours(group: &[Contour], lambda_norm: f64) -> Result<Contour, GeometryError> {
    match group {
        [] => Err(GeometryError::DegenerateInput("empty contour group")),
        [only] => Ok(only.clone()),
        _ => {
            let vertices: Vec<Point2D> = group
                .iter()
                .flat_map(|c| c.polygon.vertices().iter().copied())
                .collect();
            let merged_box = group
                .iter()
                .map(|c| *c.polygon.bbox())
                .reduce(|a, b| a.union(&b))
                .expect("non-empty group");
            let polygon = outline(
                &vertices,
                lambda_norm,
                DEGENERATE_TOLERANCE * merged_box.diagonal(),
            )?;
            let point_count = group.iter().map(|c| c.point_count).sum();
            let source_node = group
                .iter()
                .map(|c| c.source_node)
                .min()
                .expect("non-empty group");
            let eps_hint = group.iter().filter_map(|c| c.eps_hint).reduce(f64::max);
            Ok(Contour::new(polygon, point_count, source_node, eps_hint))
        }
    }
}
