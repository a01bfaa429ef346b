use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::DataError;
use crate::geometry::Point2D;

/// How the dataset is spread over the leaf nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PartitionStrategy {
    /// Equal-count vertical strips, each split into equal-count cells.
    #[default]
    SpatialGrid,
    /// Seeded shuffle dealt into equal-size fragments.
    Random,
    /// Point `i` goes to node `i mod n_nodes`.
    RoundRobin,
}

/// The share of a dataset held by one leaf node.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DatasetFragment {
    pub node_id: usize,
    pub points: Vec<Point2D>,
    /// Indices into the parent dataset, ascending.
    pub origin_ids: Vec<usize>,
}

impl DatasetFragment {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Splits `points` across `n_nodes` fragments. Every index appears in
/// exactly one fragment; fragment `i` has `node_id == i`.
pub fn partition(
    points: &[Point2D],
    n_nodes: usize,
    strategy: PartitionStrategy,
    seed: u64,
) -> Result<Vec<DatasetFragment>, DataError> {
    if n_nodes == 0 {
        return Err(DataError::InvalidParam("n_nodes must be at least 1"));
    }
    let mut buckets: Vec<Vec<usize>> = match strategy {
        PartitionStrategy::RoundRobin => {
            let mut b = alloc::vec![Vec::new(); n_nodes];
            for i in 0..points.len() {
                b[i % n_nodes].push(i);
            }
            b
        }
        PartitionStrategy::Random => {
            let mut ids: Vec<usize> = (0..points.len()).collect();
            ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            split_even(&ids, n_nodes)
        }
        PartitionStrategy::SpatialGrid => spatial_grid(points, n_nodes),
    };
    Ok(buckets
        .iter_mut()
        .enumerate()
        .map(|(node_id, ids)| {
            ids.sort_unstable();
            DatasetFragment {
                node_id,
                points: ids.iter().map(|&i| points[i]).collect(),
                origin_ids: core::mem::take(ids),
            }
        })
        .collect())
}

/// Most square factorisation `cols * rows = n` with `cols >= rows`.
pub(crate) fn grid_shape(n: usize) -> (usize, usize) {
    let mut rows = libm::sqrt(n as f64) as usize;
    while rows > 1 && !n.is_multiple_of(rows) {
        rows -= 1;
    }
    let rows = rows.max(1);
    (n / rows, rows)
}

fn spatial_grid(points: &[Point2D], n_nodes: usize) -> Vec<Vec<usize>> {
    let (cols, rows) = grid_shape(n_nodes);
    let mut ids: Vec<usize> = (0..points.len()).collect();
    ids.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x).then(a.cmp(&b)));
    let mut out = Vec::with_capacity(n_nodes);
    for mut strip in split_even(&ids, cols) {
        strip.sort_by(|&a, &b| points[a].y.total_cmp(&points[b].y).then(a.cmp(&b)));
        out.extend(split_even(&strip, rows));
    }
    out
}

fn split_even(ids: &[usize], parts: usize) -> Vec<Vec<usize>> {
    let base = ids.len() / parts;
    let extra = ids.len() % parts;
    let mut out = Vec::with_capacity(parts);
    let mut start = 0;
    for p in 0..parts {
        let len = base + usize::from(p < extra);
        out.push(ids[start..start + len].to_vec());
        start += len;
    }
    out
}
