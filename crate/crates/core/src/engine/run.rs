use alloc::vec::Vec;
use core::time::Duration;

use super::{
    merge_group, run_local_phase, BackendParams, DdcError, DdcTiming, GlobalModel, LocalModel,
    MergePolicy, MergeRecord, NodeParams, ProximityEps, TopologyConfig,
};
use crate::data::{partition, DatasetFragment, PartitionStrategy};
use crate::geometry::Point2D;
use crate::{Clock, Executor};

/// Everything a distributed run needs besides the data.
#[derive(Clone, Debug, PartialEq)]
pub struct DdcConfig {
    pub topology: TopologyConfig,
    /// One entry applied to every node, or one entry per node.
    pub backends: Vec<BackendParams>,
    pub policy: MergePolicy,
    pub lambda_norm: f64,
    pub partition: PartitionStrategy,
    pub partition_seed: u64,
}

impl DdcConfig {
    pub fn uniform(
        topology: TopologyConfig,
        backend: BackendParams,
        policy: MergePolicy,
        lambda_norm: f64,
    ) -> Self {
        Self {
            topology,
            backends: alloc::vec![backend],
            policy,
            lambda_norm,
            partition: PartitionStrategy::SpatialGrid,
            partition_seed: 0,
        }
    }

    pub fn node_params(&self, node_id: usize) -> NodeParams {
        let backend = if self.backends.len() == 1 {
            self.backends[0].clone()
        } else {
            self.backends[node_id].clone()
        };
        NodeParams { node_id, backend }
    }

    pub fn validate(&self) -> Result<(), DdcError> {
        self.topology.validate()?;
        self.policy.validate()?;
        if self.backends.len() != 1 && self.backends.len() != self.topology.n_nodes {
            return Err(DdcError::Config("need one backend or one per node"));
        }
        if !(0.0..=1.0).contains(&self.lambda_norm) {
            return Err(DdcError::Config("lambda_norm must be in [0, 1]"));
        }
        if self.policy.kind == super::MergeKind::BoundaryProximity
            && self.policy.proximity_eps == ProximityEps::Auto
            && self.backends.iter().any(|b| !b.is_dbscan())
        {
            return Err(DdcError::Config(
                "automatic proximity_eps needs DBSCAN on every node",
            ));
        }
        Ok(())
    }
}

/// Partitions `points` and runs the full two-phase procedure.
pub fn run_ddc<E: Executor, C: Clock>(
    points: &[Point2D],
    config: &DdcConfig,
    executor: &E,
    clock: &C,
) -> Result<GlobalModel, DdcError> {
    config.validate()?;
    let fragments = partition(
        points,
        config.topology.n_nodes,
        config.partition,
        config.partition_seed,
    )?;
    run_ddc_fragments(fragments, config, executor, clock)
}

/// Runs the procedure on an existing partition, one fragment per node.
///
/// Leaves are clustered through `executor`; then, level by level, nodes are
/// grouped in blocks of `degree` consecutive ids and every group's leader
/// merges the pooled contours. Results do not depend on how `executor`
/// schedules tasks.
pub fn run_ddc_fragments<E: Executor, C: Clock>(
    fragments: Vec<DatasetFragment>,
    config: &DdcConfig,
    executor: &E,
    clock: &C,
) -> Result<GlobalModel, DdcError> {
    config.validate()?;
    if fragments.len() != config.topology.n_nodes {
        return Err(DdcError::Config("fragment count differs from n_nodes"));
    }
    let lambda = config.lambda_norm;
    let leaf_tasks: Vec<(DatasetFragment, NodeParams)> = fragments
        .into_iter()
        .enumerate()
        .map(|(i, f)| (f, config.node_params(i)))
        .collect();
    let local_models: Vec<LocalModel> = executor
        .map(leaf_tasks, |(f, p)| run_local_phase(&f, &p, lambda, clock))
        .into_iter()
        .collect::<Result<_, _>>()?;

    let mut timing = DdcTiming {
        local_makespan: local_models
            .iter()
            .map(|m| m.timing.total)
            .max()
            .unwrap_or_default(),
        local_makespan_without_matrix: local_models
            .iter()
            .map(|m| m.timing.total.saturating_sub(m.timing.matrix_build))
            .max()
            .unwrap_or_default(),
        merge_time: Duration::ZERO,
    };

    let degree = config.topology.degree;
    let policy = config.policy;
    let mut level_models = local_models.clone();
    let mut trace = Vec::new();
    let mut level = 0;
    while level_models.len() > 1 {
        level += 1;
        let groups: Vec<Vec<LocalModel>> = level_models
            .chunks(degree)
            .map(<[LocalModel]>::to_vec)
            .collect();
        let outcomes = executor
            .map(groups, |g| {
                let members: Vec<usize> = g.iter().map(|m| m.node_id).collect();
                merge_group(&g, &policy, lambda, clock).map(|o| (members, o))
            })
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        let mut slowest = Duration::ZERO;
        level_models = Vec::with_capacity(outcomes.len());
        for (group, (members, o)) in outcomes.into_iter().enumerate() {
            slowest = slowest.max(o.model.timing.total);
            trace.push(MergeRecord {
                level,
                group,
                leader: o.model.node_id,
                members,
                contours_in: o.contours_in,
                contours_out: o.model.contours.len(),
                overlaps: o.overlaps,
                bytes: o.bytes_received,
                rounds: o.rounds,
                duration: o.model.timing.total,
            });
            level_models.push(o.model);
        }
        timing.merge_time += slowest;
    }

    let contours = level_models.pop().map(|m| m.contours).unwrap_or_default();
    Ok(GlobalModel {
        contours,
        local_models,
        merge_trace: trace,
        levels: level,
        timing,
    })
}
