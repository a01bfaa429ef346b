//! Local clustering backends run independently on every node.

mod dbscan;
mod grid;
mod kmeans;
mod labeling;

pub use dbscan::{
    dbscan, dbscan_distance_matrix, dbscan_with_matrix, DbscanBackend, DbscanParams,
    DistanceMatrix, MatrixRun, DEFAULT_MATRIX_CAP,
};
pub use grid::{build_grid_index, GridIndex};
pub use kmeans::{kmeans, kmeans_fit, KMeansFit, KMeansParams};
pub use labeling::{Labeling, NOISE};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ClusterError {
    #[error("invalid parameter: {0}")]
    InvalidParam(&'static str),
    #[error("distance matrix for {points} points exceeds the cap of {cap}")]
    MemoryBudgetExceeded { points: usize, cap: usize },
}
