//! Two-phase orchestration: local clustering on every leaf, then contour
//! merging up a D-ary tree of group leaders.

mod assign;
mod local;
mod merge;
mod run;

pub use assign::assign_points;
pub(crate) use local::cluster as cluster_points;
pub use local::run_local_phase;
pub use merge::{elect_leader, find_overlaps, merge_group, MergeOutcome};
pub use run::{run_ddc, run_ddc_fragments, DdcConfig};

use alloc::vec::Vec;
use core::time::Duration;

use crate::data::DataError;
use crate::geometry::{Contour, GeometryError};
use crate::local_cluster::{ClusterError, DbscanParams, KMeansParams};

/// Local clustering algorithm and its parameters.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum BackendParams {
    Dbscan(DbscanParams),
    #[cfg_attr(feature = "serde", serde(rename = "kmeans"))]
    KMeans(KMeansParams),
}

impl BackendParams {
    /// Radius carried on produced contours for proximity merging.
    pub fn eps_hint(&self) -> Option<f64> {
        match self {
            Self::Dbscan(p) => Some(p.eps),
            Self::KMeans(_) => None,
        }
    }

    pub fn is_dbscan(&self) -> bool {
        matches!(self, Self::Dbscan(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeParams {
    pub node_id: usize,
    pub backend: BackendParams,
}

/// Number of leaves and the fan-in of every aggregation level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TopologyConfig {
    pub n_nodes: usize,
    pub degree: usize,
}

impl TopologyConfig {
    pub fn new(n_nodes: usize, degree: usize) -> Result<Self, DdcError> {
        let t = Self { n_nodes, degree };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), DdcError> {
        if self.n_nodes == 0 {
            return Err(DdcError::Config("n_nodes must be at least 1"));
        }
        if self.degree < 2 {
            return Err(DdcError::Config("degree must be at least 2"));
        }
        Ok(())
    }

    /// Tree height: `ceil(log_degree(n_nodes))`.
    pub fn levels(&self) -> usize {
        let mut width = self.n_nodes;
        let mut levels = 0;
        while width > 1 {
            width = width.div_ceil(self.degree);
            levels += 1;
        }
        levels
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LocalTiming {
    /// Clustering plus contour extraction.
    pub total: Duration,
    /// Share of `total` spent building a distance matrix.
    pub matrix_build: Duration,
}

/// Contours held by one node, either a leaf result or a merged group.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalModel {
    pub node_id: usize,
    pub contours: Vec<Contour>,
    pub timing: LocalTiming,
    /// Serialized size of `contours`.
    pub bytes_estimate: usize,
}

impl LocalModel {
    pub fn new(node_id: usize, contours: Vec<Contour>, timing: LocalTiming) -> Self {
        let bytes_estimate = contours.iter().map(Contour::wire_bytes).sum();
        Self {
            node_id,
            contours,
            timing,
            bytes_estimate,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.contours.iter().map(|c| c.polygon.len()).sum()
    }
}

/// One leader merge in the aggregation tree.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MergeRecord {
    pub level: usize,
    /// Group index within the level.
    pub group: usize,
    pub leader: usize,
    pub members: Vec<usize>,
    pub contours_in: usize,
    pub contours_out: usize,
    /// Non-singleton components found, summed over fixpoint rounds.
    pub overlaps: usize,
    /// Bytes the non-leader members sent to the leader.
    pub bytes: usize,
    pub rounds: usize,
    #[cfg_attr(feature = "serde", serde(skip))]
    pub duration: Duration,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DdcTiming {
    /// Slowest leaf.
    pub local_makespan: Duration,
    /// Slowest leaf with distance-matrix construction left out.
    pub local_makespan_without_matrix: Duration,
    /// Sum over levels of the slowest group merge.
    pub merge_time: Duration,
}

impl DdcTiming {
    pub fn makespan(&self) -> Duration {
        self.local_makespan + self.merge_time
    }

    pub fn makespan_without_matrix(&self) -> Duration {
        self.local_makespan_without_matrix + self.merge_time
    }
}

/// Global clusters at the root together with how they were obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalModel {
    pub contours: Vec<Contour>,
    pub local_models: Vec<LocalModel>,
    pub merge_trace: Vec<MergeRecord>,
    pub levels: usize,
    pub timing: DdcTiming,
}

impl GlobalModel {
    pub fn n_clusters(&self) -> usize {
        self.contours.len()
    }

    /// Bytes moved between nodes over all merge levels.
    pub fn bytes_exchanged(&self) -> usize {
        self.merge_trace.iter().map(|r| r.bytes).sum()
    }
}

/// Predicate that links two contours into the same global cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MergeKind {
    PolygonOverlap,
    #[default]
    BoundaryProximity,
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ProximityEps {
    /// Larger `eps_hint` of the two contours.
    #[default]
    Auto,
    Fixed(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MergePolicy {
    pub kind: MergeKind,
    #[cfg_attr(feature = "serde", serde(default))]
    pub proximity_eps: ProximityEps,
    /// Maximum density ratio for two contours to merge; `None` disables it.
    #[cfg_attr(feature = "serde", serde(default))]
    pub density_gate: Option<f64>,
}

impl MergePolicy {
    pub const fn polygon_overlap() -> Self {
        Self {
            kind: MergeKind::PolygonOverlap,
            proximity_eps: ProximityEps::Auto,
            density_gate: None,
        }
    }

    pub const fn proximity(eps: ProximityEps) -> Self {
        Self {
            kind: MergeKind::BoundaryProximity,
            proximity_eps: eps,
            density_gate: None,
        }
    }

    pub const fn with_density_gate(self, gate: f64) -> Self {
        Self {
            density_gate: Some(gate),
            ..self
        }
    }

    pub fn validate(&self) -> Result<(), DdcError> {
        if let ProximityEps::Fixed(e) = self.proximity_eps {
            if !(e > 0.0 && e.is_finite()) {
                return Err(DdcError::Config("proximity_eps must be positive"));
            }
        }
        if let Some(g) = self.density_gate {
            if g.is_nan() || g < 1.0 {
                return Err(DdcError::Config("density_gate must be at least 1"));
            }
        }
        Ok(())
    }

    /// Radius used for a pair, or `None` when it cannot be resolved.
    pub fn resolve_eps(&self, a: &Contour, b: &Contour) -> Option<f64> {
        match self.proximity_eps {
            ProximityEps::Fixed(e) => Some(e),
            ProximityEps::Auto => match (a.eps_hint, b.eps_hint) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (Some(x), None) | (None, Some(x)) => Some(x),
                (None, None) => None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DdcError {
    #[error("configuration error: {0}")]
    Config(&'static str),
    #[error("node {0} received an empty fragment")]
    EmptyFragment(usize),
    #[error("cannot elect a leader of an empty group")]
    EmptyGroup,
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Data(#[from] DataError),
}
