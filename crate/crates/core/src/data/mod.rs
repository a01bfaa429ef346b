//! Synthetic benchmark datasets and their partitioning across nodes.

mod generate;
mod partition;
pub mod presets;

pub use generate::{generate, DatasetSpec, Placement, ShapeKind, ShapeSpec};
pub use partition::{partition, DatasetFragment, PartitionStrategy};
pub use presets::{preset, Preset, PRESET_NAMES};

use alloc::vec::Vec;

use crate::geometry::Point2D;
use crate::local_cluster::Labeling;

/// Points with optional ground-truth labels (`-1` for noise).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Dataset {
    pub points: Vec<Point2D>,
    pub labels: Option<Vec<i32>>,
}

impl Dataset {
    pub fn unlabeled(points: Vec<Point2D>) -> Self {
        Self {
            points,
            labels: None,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Ground truth as a [`Labeling`], renumbered by first appearance.
    pub fn truth(&self) -> Option<Labeling> {
        self.labels.as_ref().map(|l| {
            let raw: Vec<i64> = l.iter().map(|&x| x as i64).collect();
            Labeling::from_raw(&raw)
        })
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DataError {
    #[error("invalid dataset spec: {0}")]
    InvalidSpec(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParam(&'static str),
}
