//! Timing tables: per-dataset backend comparison and a node-count sweep.
//!
//! Every timed section runs on the calling thread so that simulated nodes
//! do not compete for cores; the reported times are the engine's makespan
//! model, not wall time of the whole simulation.

use std::fmt::Write as _;

use ddc_core::data::{generate, presets::scalability_spec, PartitionStrategy, Preset};
use ddc_core::engine::{
    run_ddc, BackendParams, DdcConfig, MergePolicy, ProximityEps, TopologyConfig,
};
use ddc_core::eval::median;
use ddc_core::local_cluster::{DbscanBackend, DbscanParams, KMeansParams};
use ddc_core::Sequential;

use crate::error::Result;
use crate::runtime::MonotonicClock;

/// DBSCAN radius for the scalability dataset.
pub const SCALABILITY_EPS: f64 = 1.0;
pub const SCALABILITY_MIN_PTS: usize = 5;
pub const SCALABILITY_LAMBDA: f64 = 0.7;
pub const SCALABILITY_POINTS: usize = 50_000;
pub const SCALABILITY_NODES: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchOptions {
    pub n_nodes: usize,
    pub degree: usize,
    pub reps: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            n_nodes: 5,
            degree: 2,
            reps: 3,
        }
    }
}

/// One dataset row, times in milliseconds.
#[derive(Clone, Debug, PartialEq)]
pub struct Table2Row {
    pub dataset: String,
    pub size: usize,
    pub kmeans_ms: f64,
    pub dbscan_w_ms: f64,
    pub dbscan_wo_ms: f64,
}

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn med(mut v: Vec<f64>) -> f64 {
    median(&mut v).unwrap_or(0.0)
}

/// DDC-K-Means as benchmarked: per-preset `k`, overlap merging and a
/// random partition.
pub fn kmeans_config(p: &Preset, topology: TopologyConfig) -> DdcConfig {
    let mut cfg = DdcConfig::uniform(
        topology,
        BackendParams::KMeans(KMeansParams::new(p.kmeans_k, 1)),
        MergePolicy::polygon_overlap(),
        p.lambda,
    );
    cfg.partition = PartitionStrategy::Random;
    cfg
}

/// DDC-DBSCAN with the preset's parameters and proximity merging.
pub fn dbscan_config(p: &Preset, topology: TopologyConfig, index: DbscanBackend) -> DdcConfig {
    DdcConfig::uniform(
        topology,
        BackendParams::Dbscan(DbscanParams::new(p.eps, p.min_pts).with_backend(index)),
        MergePolicy::proximity(ProximityEps::Auto),
        p.lambda,
    )
}

/// Median makespans of DDC-K-Means and distance-matrix DDC-DBSCAN (with
/// and without the matrix build) on each preset.
pub fn table2(presets: &[Preset], opts: &BenchOptions) -> Result<Vec<Table2Row>> {
    let topology = TopologyConfig::new(opts.n_nodes, opts.degree)?;
    let reps = opts.reps.max(1);
    presets
        .iter()
        .map(|p| {
            let data = generate(&p.spec)?;
            let km = kmeans_config(p, topology);
            let db = dbscan_config(p, topology, DbscanBackend::DistanceMatrix);
            let (mut k_ms, mut w_ms, mut wo_ms) = (Vec::new(), Vec::new(), Vec::new());
            for _ in 0..reps {
                let g = run_ddc(&data.points, &km, &Sequential, &MonotonicClock::new())?;
                k_ms.push(ms(g.timing.makespan()));
                let g = run_ddc(&data.points, &db, &Sequential, &MonotonicClock::new())?;
                w_ms.push(ms(g.timing.makespan()));
                wo_ms.push(ms(g.timing.makespan_without_matrix()));
            }
            Ok(Table2Row {
                dataset: p.name.to_string(),
                size: data.len(),
                kmeans_ms: med(k_ms),
                dbscan_w_ms: med(w_ms),
                dbscan_wo_ms: med(wo_ms),
            })
        })
        .collect()
}

pub fn table2_csv(rows: &[Table2Row]) -> String {
    let mut s = String::from("dataset,SIZE,DDC-K-Means,DDC-DBSCAN W,DDC-DBSCAN W/O\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{:.3},{:.3},{:.3}",
            r.dataset, r.size, r.kmeans_ms, r.dbscan_w_ms, r.dbscan_wo_ms
        );
    }
    s
}

/// One node count of the sweep, times in milliseconds.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalabilityRow {
    pub n_nodes: usize,
    pub points: usize,
    pub local_makespan_ms: f64,
    pub merge_ms: f64,
    pub makespan_ms: f64,
    pub n_clusters: usize,
}

/// Grid-index DDC-DBSCAN on the scalability dataset for each node count.
pub fn scalability(
    n_points: usize,
    node_counts: &[usize],
    degree: usize,
    reps: usize,
    seed: u64,
) -> Result<Vec<ScalabilityRow>> {
    let data = generate(&scalability_spec(n_points, seed))?;
    let backend = BackendParams::Dbscan(DbscanParams::new(SCALABILITY_EPS, SCALABILITY_MIN_PTS));
    let reps = reps.max(1);
    node_counts
        .iter()
        .map(|&n| {
            let cfg = DdcConfig::uniform(
                TopologyConfig::new(n, degree)?,
                backend.clone(),
                MergePolicy::proximity(ProximityEps::Auto),
                SCALABILITY_LAMBDA,
            );
            let (mut local, mut merge, mut total) = (Vec::new(), Vec::new(), Vec::new());
            let mut n_clusters = 0;
            for _ in 0..reps {
                let g = run_ddc(&data.points, &cfg, &Sequential, &MonotonicClock::new())?;
                local.push(ms(g.timing.local_makespan));
                merge.push(ms(g.timing.merge_time));
                total.push(ms(g.timing.makespan()));
                n_clusters = g.n_clusters();
            }
            Ok(ScalabilityRow {
                n_nodes: n,
                points: data.len(),
                local_makespan_ms: med(local),
                merge_ms: med(merge),
                makespan_ms: med(total),
                n_clusters,
            })
        })
        .collect()
}

pub fn scalability_csv(rows: &[ScalabilityRow]) -> String {
    let mut s = String::from("n_nodes,points,local_makespan_ms,merge_ms,makespan_ms,n_clusters\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{:.3},{:.3},{:.3},{}",
            r.n_nodes, r.points, r.local_makespan_ms, r.merge_ms, r.makespan_ms, r.n_clusters
        );
    }
    s
}
