//! Run configuration: a JSON file, command-line overrides and preset
//! defaults, resolved into one explicit document.

use std::path::{Path, PathBuf};

use ddc_core::data::{generate, preset, Dataset, DatasetSpec, PartitionStrategy, Preset};
use ddc_core::engine::{
    BackendParams, DdcConfig, MergeKind, MergePolicy, ProximityEps, TopologyConfig,
};
use ddc_core::geometry::DEFAULT_LAMBDA;
use ddc_core::local_cluster::{DbscanBackend, DbscanParams, KMeansParams};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io;

pub const DEFAULT_NODES: usize = 5;
pub const DEFAULT_DEGREE: usize = 2;
pub const DEFAULT_MIN_PTS: usize = 4;
pub const DEFAULT_OUT: &str = "ddc-out";

/// Where the points come from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DatasetSource {
    Preset { name: String, seed: u64 },
    Spec(DatasetSpec),
    Csv { path: PathBuf },
}

/// Backend parameters for one node that differ from the shared ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeOverride {
    pub node_id: usize,
    pub params: BackendParams,
}

/// A fully resolved run. Every field is explicit so the file written next
/// to the outputs reproduces the run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dataset: DatasetSource,
    pub n_nodes: usize,
    pub degree: usize,
    pub partition: PartitionStrategy,
    pub partition_seed: u64,
    pub backend: BackendParams,
    pub node_overrides: Vec<NodeOverride>,
    pub lambda_norm: f64,
    pub policy: MergePolicy,
    pub threads: Option<usize>,
    pub out: PathBuf,
}

/// The same fields, all optional, as read from a config file.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub dataset: Option<DatasetSource>,
    pub n_nodes: Option<usize>,
    pub degree: Option<usize>,
    pub partition: Option<PartitionStrategy>,
    pub partition_seed: Option<u64>,
    pub backend: Option<BackendParams>,
    pub node_overrides: Option<Vec<NodeOverride>>,
    pub lambda_norm: Option<f64>,
    pub policy: Option<MergePolicy>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Dbscan,
    KMeans,
}

impl std::str::FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "dbscan" => Ok(Self::Dbscan),
            "kmeans" | "k-means" => Ok(Self::KMeans),
            other => Err(Error::config(format!(
                "unknown backend {other:?} (expected dbscan or kmeans)"
            ))),
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub preset: Option<String>,
    pub input: Option<PathBuf>,
    pub spec: Option<PathBuf>,
    pub seed: Option<u64>,
    pub nodes: Option<usize>,
    pub degree: Option<usize>,
    pub backend: Option<String>,
    pub dbscan_index: Option<String>,
    pub eps: Option<f64>,
    pub min_pts: Option<usize>,
    pub k: Option<usize>,
    pub lambda: Option<f64>,
    pub policy: Option<String>,
    pub proximity_eps: Option<String>,
    pub density_gate: Option<f64>,
    pub partition: Option<String>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
}

pub fn parse_partition(s: &str) -> Result<PartitionStrategy> {
    match s.to_ascii_lowercase().replace('-', "_").as_str() {
        "spatial_grid" | "spatial" | "grid" => Ok(PartitionStrategy::SpatialGrid),
        "random" => Ok(PartitionStrategy::Random),
        "round_robin" => Ok(PartitionStrategy::RoundRobin),
        other => Err(Error::config(format!(
            "unknown partition strategy {other:?}"
        ))),
    }
}

pub fn parse_policy(s: &str) -> Result<MergeKind> {
    match s.to_ascii_lowercase().replace('-', "_").as_str() {
        "polygon_overlap" | "overlap" => Ok(MergeKind::PolygonOverlap),
        "boundary_proximity" | "proximity" => Ok(MergeKind::BoundaryProximity),
        other => Err(Error::config(format!("unknown merge policy {other:?}"))),
    }
}

pub fn parse_dbscan_index(s: &str) -> Result<DbscanBackend> {
    match s.to_ascii_lowercase().replace('-', "_").as_str() {
        "grid_index" | "grid" => Ok(DbscanBackend::GridIndex),
        "distance_matrix" | "matrix" => Ok(DbscanBackend::DistanceMatrix),
        "brute_force" | "brute" => Ok(DbscanBackend::BruteForce),
        other => Err(Error::config(format!("unknown DBSCAN index {other:?}"))),
    }
}

fn parse_proximity_eps(s: &str) -> Result<ProximityEps> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(ProximityEps::Auto);
    }
    s.parse::<f64>().map(ProximityEps::Fixed).map_err(|_| {
        Error::config(format!(
            "proximity eps must be \"auto\" or a number, got {s:?}"
        ))
    })
}

impl RunConfig {
    /// Merges command-line overrides, the config file and preset defaults.
    pub fn resolve(file: ConfigFile, o: &Overrides) -> Result<Self> {
        let dataset = resolve_dataset(file.dataset, o)?;
        let preset = match &dataset {
            DatasetSource::Preset { name, .. } => preset(name),
            _ => None,
        };
        let seed = o.seed;

        let kind = match (&o.backend, &file.backend) {
            (Some(s), _) => s.parse()?,
            (None, Some(BackendParams::KMeans(_))) => BackendKind::KMeans,
            _ => BackendKind::Dbscan,
        };
        let backend = match kind {
            BackendKind::Dbscan => {
                let base = match &file.backend {
                    Some(BackendParams::Dbscan(p)) => Some(*p),
                    _ => None,
                };
                let eps = o
                    .eps
                    .or(base.map(|p| p.eps))
                    .or(preset.as_ref().map(|p| p.eps))
                    .ok_or_else(|| Error::config("DBSCAN needs --eps (or a preset)"))?;
                let min_pts = o
                    .min_pts
                    .or(base.map(|p| p.min_pts))
                    .or(preset.as_ref().map(|p| p.min_pts))
                    .unwrap_or(DEFAULT_MIN_PTS);
                let index = match &o.dbscan_index {
                    Some(s) => parse_dbscan_index(s)?,
                    None => base.map(|p| p.backend).unwrap_or_default(),
                };
                let params = DbscanParams::new(eps, min_pts).with_backend(index);
                params
                    .validate()
                    .map_err(|e| Error::config(e.to_string()))?;
                BackendParams::Dbscan(params)
            }
            BackendKind::KMeans => {
                let base = match &file.backend {
                    Some(BackendParams::KMeans(p)) => Some(*p),
                    _ => None,
                };
                let k =
                    o.k.or(base.map(|p| p.k))
                        .or(preset.as_ref().map(|p| p.kmeans_k))
                        .ok_or_else(|| Error::config("K-Means needs --k (or a preset)"))?;
                if k == 0 {
                    return Err(Error::config("k must be at least 1"));
                }
                let mut params = base.unwrap_or_else(|| KMeansParams::new(k, 1));
                params.k = k;
                if let Some(s) = seed {
                    params.seed = s;
                }
                BackendParams::KMeans(params)
            }
        };

        let default_policy = match kind {
            BackendKind::Dbscan => MergePolicy::proximity(ProximityEps::Auto),
            BackendKind::KMeans => MergePolicy::polygon_overlap(),
        };
        let mut policy = file.policy.unwrap_or(default_policy);
        if let Some(s) = &o.policy {
            policy.kind = parse_policy(s)?;
        }
        if let Some(s) = &o.proximity_eps {
            policy.proximity_eps = parse_proximity_eps(s)?;
        }
        if o.density_gate.is_some() {
            policy.density_gate = o.density_gate;
        }

        let partition = match &o.partition {
            Some(s) => parse_partition(s)?,
            None => file.partition.unwrap_or_default(),
        };
        let cfg = Self {
            dataset,
            n_nodes: o.nodes.or(file.n_nodes).unwrap_or(DEFAULT_NODES),
            degree: o.degree.or(file.degree).unwrap_or(DEFAULT_DEGREE),
            partition,
            partition_seed: seed.or(file.partition_seed).unwrap_or(0),
            backend,
            node_overrides: file.node_overrides.unwrap_or_default(),
            lambda_norm: o
                .lambda
                .or(file.lambda_norm)
                .or(preset.as_ref().map(|p| p.lambda))
                .unwrap_or(DEFAULT_LAMBDA),
            policy,
            threads: o.threads.or(file.threads),
            out: o
                .out
                .clone()
                .or(file.out)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
        };
        cfg.ddc_config()?;
        Ok(cfg)
    }

    /// The engine configuration, validated.
    pub fn ddc_config(&self) -> Result<DdcConfig> {
        let topology = TopologyConfig::new(self.n_nodes, self.degree)?;
        let backends = if self.node_overrides.is_empty() {
            vec![self.backend.clone()]
        } else {
            let mut all = vec![self.backend.clone(); self.n_nodes];
            for ov in &self.node_overrides {
                let slot = all.get_mut(ov.node_id).ok_or_else(|| {
                    Error::config(format!("override for unknown node {}", ov.node_id))
                })?;
                *slot = ov.params.clone();
            }
            all
        };
        let cfg = DdcConfig {
            topology,
            backends,
            policy: self.policy,
            lambda_norm: self.lambda_norm,
            partition: self.partition,
            partition_seed: self.partition_seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads or generates the points, with ground truth when available.
    pub fn load_dataset(&self) -> Result<LoadedDataset> {
        load_source(&self.dataset)
    }
}

/// Points plus what is known about their expected structure.
#[derive(Clone, Debug)]
pub struct LoadedDataset {
    pub dataset: Dataset,
    pub expected_clusters: Option<usize>,
}

pub fn load_source(source: &DatasetSource) -> Result<LoadedDataset> {
    match source {
        DatasetSource::Preset { name, seed } => {
            let mut p = lookup_preset(name)?;
            p.spec.seed = *seed;
            Ok(LoadedDataset {
                dataset: generate(&p.spec)?,
                expected_clusters: Some(p.expected_clusters),
            })
        }
        DatasetSource::Spec(spec) => Ok(LoadedDataset {
            dataset: generate(spec)?,
            expected_clusters: Some(spec.shapes.len()),
        }),
        DatasetSource::Csv { path } => {
            let dataset = io::read_points(path)?;
            let expected_clusters = dataset.truth().map(|t| t.n_clusters);
            Ok(LoadedDataset {
                dataset,
                expected_clusters,
            })
        }
    }
}

pub fn lookup_preset(name: &str) -> Result<Preset> {
    preset(name).ok_or_else(|| Error::config(format!("unknown preset {name:?} (expected t1..t6)")))
}

/// Reads a dataset spec file; malformed content is a configuration error.
pub fn load_spec(path: &Path) -> Result<DatasetSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))
}

fn resolve_dataset(file: Option<DatasetSource>, o: &Overrides) -> Result<DatasetSource> {
    let given = [o.preset.is_some(), o.input.is_some(), o.spec.is_some()];
    if given.iter().filter(|&&g| g).count() > 1 {
        return Err(Error::config(
            "give at most one of --preset, --input and --spec",
        ));
    }
    let mut source = if let Some(name) = &o.preset {
        let p = lookup_preset(name)?;
        DatasetSource::Preset {
            name: p.name.to_string(),
            seed: p.spec.seed,
        }
    } else if let Some(path) = &o.input {
        DatasetSource::Csv { path: path.clone() }
    } else if let Some(path) = &o.spec {
        DatasetSource::Spec(load_spec(path)?)
    } else {
        file.ok_or_else(|| {
            Error::config("no dataset: use --preset, --input, --spec or a config file")
        })?
    };
    if let Some(seed) = o.seed {
        match &mut source {
            DatasetSource::Preset { seed: s, .. } => *s = seed,
            DatasetSource::Spec(spec) => spec.seed = seed,
            DatasetSource::Csv { .. } => {}
        }
    }
    if let DatasetSource::Preset { name, .. } = &source {
        lookup_preset(name)?;
    }
    Ok(source)
}
