//! Clustering quality, communication reduction and run summaries.

use hashbrown::{HashMap, HashSet};

use crate::engine::{
    run_local_phase, BackendParams, DdcError, GlobalModel, LocalModel, NodeParams,
};
use crate::geometry::Point2D;
use crate::local_cluster::{Labeling, NOISE};
use crate::runtime::Clock;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("labelings differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
}

/// Adjusted Rand Index between two labelings.
///
/// Noise in `predicted` counts as one more label. With `exclude_noise`,
/// points that are noise in `reference` are dropped first. Fewer than two
/// remaining points, or two identical trivial partitions, give `1.0`.
pub fn adjusted_rand_index(
    reference: &Labeling,
    predicted: &Labeling,
    exclude_noise: bool,
) -> Result<f64, EvalError> {
    if reference.len() != predicted.len() {
        return Err(EvalError::LengthMismatch(reference.len(), predicted.len()));
    }
    let mut table: HashMap<(i32, i32), u64> = HashMap::new();
    let mut rows: HashMap<i32, u64> = HashMap::new();
    let mut cols: HashMap<i32, u64> = HashMap::new();
    let mut n = 0u64;
    for (&a, &b) in reference.labels.iter().zip(&predicted.labels) {
        if exclude_noise && a == NOISE {
            continue;
        }
        *table.entry((a, b)).or_default() += 1;
        *rows.entry(a).or_default() += 1;
        *cols.entry(b).or_default() += 1;
        n += 1;
    }
    if n < 2 {
        return Ok(1.0);
    }
    let pairs = |c: u64| (c * (c - 1) / 2) as f64;
    let index: f64 = table.values().map(|&c| pairs(c)).sum();
    let sum_a: f64 = rows.values().map(|&c| pairs(c)).sum();
    let sum_b: f64 = cols.values().map(|&c| pairs(c)).sum();
    let expected = sum_a * sum_b / pairs(n);
    let max = (sum_a + sum_b) / 2.0;
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// Distinct contour vertices across `models` per dataset point, capped at 1.
pub fn reduction_ratio(models: &[LocalModel], dataset_size: usize) -> f64 {
    if dataset_size == 0 {
        return 0.0;
    }
    let distinct: HashSet<(u64, u64)> = models
        .iter()
        .flat_map(|m| &m.contours)
        .flat_map(|c| c.polygon.vertices())
        .map(|p| (p.x.to_bits(), p.y.to_bits()))
        .collect();
    (distinct.len() as f64 / dataset_size as f64).min(1.0)
}

/// Runs `backend` on the whole dataset as a single machine would.
pub fn oracle_single_machine(
    points: &[Point2D],
    backend: &BackendParams,
) -> Result<Labeling, DdcError> {
    let mut timing = Default::default();
    crate::engine::cluster_points(points, backend, &crate::NullClock, &mut timing)
}

/// Local-phase contours a single node would produce on the whole dataset.
pub fn oracle_contours<C: Clock>(
    points: &[Point2D],
    backend: &BackendParams,
    lambda_norm: f64,
    clock: &C,
) -> Result<LocalModel, DdcError> {
    let fragment = crate::data::DatasetFragment {
        node_id: 0,
        points: points.to_vec(),
        origin_ids: (0..points.len()).collect(),
    };
    let params = NodeParams {
        node_id: 0,
        backend: backend.clone(),
    };
    run_local_phase(&fragment, &params, lambda_norm, clock)
}

/// Summary of one distributed run.
#[derive(Clone, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalReport {
    /// Against ground truth with reference noise excluded, when truth is known.
    pub ari: Option<f64>,
    pub n_clusters_found: usize,
    pub n_clusters_expected: Option<usize>,
    pub n_points: usize,
    pub reduction_ratio: f64,
    pub local_makespan_ms: f64,
    pub merge_time_ms: f64,
    pub total_ms: f64,
    pub bytes_exchanged: usize,
    pub dataset_bytes: usize,
    pub levels: usize,
}

impl EvalReport {
    /// Builds a report from a finished run. `dataset_bytes` is the size of
    /// the serialized points the contours stand in for.
    pub fn from_run(
        global: &GlobalModel,
        n_points: usize,
        dataset_bytes: usize,
        truth: Option<(&Labeling, &Labeling)>,
        n_clusters_expected: Option<usize>,
    ) -> Result<Self, EvalError> {
        let ari = match truth {
            Some((reference, predicted)) => Some(adjusted_rand_index(reference, predicted, true)?),
            None => None,
        };
        let ms = |d: core::time::Duration| d.as_secs_f64() * 1e3;
        Ok(Self {
            ari,
            n_clusters_found: global.n_clusters(),
            n_clusters_expected,
            n_points,
            reduction_ratio: reduction_ratio(&global.local_models, n_points),
            local_makespan_ms: ms(global.timing.local_makespan),
            merge_time_ms: ms(global.timing.merge_time),
            total_ms: ms(global.timing.makespan()),
            bytes_exchanged: global.bytes_exchanged(),
            dataset_bytes,
            levels: global.levels,
        })
    }
}

/// Median of the samples, averaging the middle pair for even counts.
pub fn median(samples: &mut [f64]) -> Option<f64> {
    if samples.is_empty() {
        return None;
    }
    samples.sort_by(f64::total_cmp);
    let m = samples.len() / 2;
    Some(if samples.len() % 2 == 1 {
        samples[m]
    } else {
        (samples[m - 1] + samples[m]) / 2.0
    })
}
