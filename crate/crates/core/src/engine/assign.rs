use alloc::vec::Vec;

use super::GlobalModel;
use crate::geometry::{point_in_polygon, Point2D};
use crate::local_cluster::{Labeling, NOISE};

/// Labels every point with the index of the global contour covering it.
///
/// Overlapping coverage goes to the densest contour (lowest index on ties);
/// uncovered points are noise.
pub fn assign_points(global: &GlobalModel, points: &[Point2D]) -> Labeling {
    let order = density_order(global);
    let labels = points
        .iter()
        .map(|p| {
            order
                .iter()
                .find(|&&i| point_in_polygon(*p, &global.contours[i].polygon).is_covered())
                .map_or(NOISE, |&i| i as i32)
        })
        .collect();
    Labeling {
        labels,
        n_clusters: global.contours.len(),
    }
}

fn density_order(global: &GlobalModel) -> Vec<usize> {
    let mut order: Vec<usize> = (0..global.contours.len()).collect();
    order.sort_by(|&a, &b| {
        global.contours[b]
            .density
            .total_cmp(&global.contours[a].density)
            .then(a.cmp(&b))
    });
    order
}
