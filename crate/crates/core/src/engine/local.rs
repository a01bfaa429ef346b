use alloc::vec::Vec;

use super::{BackendParams, DdcError, LocalModel, LocalTiming, NodeParams};
use crate::data::DatasetFragment;
use crate::geometry::{BBox, Contour, Point2D, DEGENERATE_TOLERANCE};
use crate::local_cluster::{
    dbscan, dbscan_distance_matrix, kmeans, DbscanBackend, Labeling, DEFAULT_MATRIX_CAP,
};
use crate::Clock;

/// Clusters one fragment and outlines every non-noise cluster.
pub fn run_local_phase<C: Clock + ?Sized>(
    fragment: &DatasetFragment,
    params: &NodeParams,
    lambda_norm: f64,
    clock: &C,
) -> Result<LocalModel, DdcError> {
    if fragment.is_empty() {
        return Err(DdcError::EmptyFragment(fragment.node_id));
    }
    let start = clock.now();
    let mut timing = LocalTiming::default();
    let labeling = cluster(&fragment.points, &params.backend, clock, &mut timing)?;
    let contours = outline_clusters(&fragment.points, &labeling, params, lambda_norm)?;
    timing.total = clock.elapsed_since(start);
    Ok(LocalModel::new(params.node_id, contours, timing))
}

pub(crate) fn cluster<C: Clock + ?Sized>(
    points: &[Point2D],
    backend: &BackendParams,
    clock: &C,
    timing: &mut LocalTiming,
) -> Result<Labeling, DdcError> {
    Ok(match backend {
        BackendParams::Dbscan(p) if p.backend == DbscanBackend::DistanceMatrix => {
            let run = dbscan_distance_matrix(points, p, DEFAULT_MATRIX_CAP, clock)?;
            timing.matrix_build = run.matrix_build;
            run.labeling
        }
        BackendParams::Dbscan(p) => dbscan(points, p)?,
        BackendParams::KMeans(p) => kmeans(points, p)?,
    })
}

fn outline_clusters(
    points: &[Point2D],
    labeling: &Labeling,
    params: &NodeParams,
    lambda_norm: f64,
) -> Result<Vec<Contour>, DdcError> {
    let margin = BBox::of(points).map_or(0.0, |b| DEGENERATE_TOLERANCE * b.diagonal());
    let eps_hint = params.backend.eps_hint();
    let mut buffer = Vec::new();
    labeling
        .members()
        .iter()
        .map(|ids| {
            buffer.clear();
            buffer.extend(ids.iter().map(|&i| points[i]));
            Ok(Contour::from_points(
                &buffer,
                lambda_norm,
                params.node_id,
                eps_hint,
                margin,
            )?)
        })
        .collect()
}
