use std::path::Path;

use ddc_core::data::Dataset;
use ddc_core::engine::{assign_points, run_ddc, GlobalModel};
use ddc_core::eval::EvalReport;
use ddc_core::Labeling;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::io;
use crate::runtime::{MonotonicClock, RayonExecutor};

pub const CONTOURS_FILE: &str = "contours.wkt";
pub const LOCAL_CONTOURS_FILE: &str = "local_contours.wkt";
pub const ASSIGNMENTS_FILE: &str = "assignments.csv";
pub const TRACE_FILE: &str = "merge_trace.jsonl";
pub const REPORT_FILE: &str = "report.json";
pub const RESOLVED_CONFIG_FILE: &str = "resolved_config.json";

/// Everything a run produces.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub dataset: Dataset,
    pub global: GlobalModel,
    pub assignments: Labeling,
    pub report: EvalReport,
}

/// Loads the dataset and runs the distributed procedure. Point assignment
/// happens after timing stops.
pub fn execute(cfg: &RunConfig) -> Result<RunOutcome> {
    let ddc = cfg.ddc_config()?;
    let loaded = cfg.load_dataset()?;
    let executor = RayonExecutor::new(cfg.threads).map_err(|e| Error::config(e.to_string()))?;
    let global = run_ddc(
        &loaded.dataset.points,
        &ddc,
        &executor,
        &MonotonicClock::new(),
    )?;
    let assignments = assign_points(&global, &loaded.dataset.points);
    let truth = loaded.dataset.truth();
    let report = EvalReport::from_run(
        &global,
        loaded.dataset.len(),
        io::serialized_size(&loaded.dataset.points),
        truth.as_ref().map(|t| (t, &assignments)),
        loaded.expected_clusters,
    )?;
    Ok(RunOutcome {
        dataset: loaded.dataset,
        global,
        assignments,
        report,
    })
}

/// Writes contours, assignments, trace, report and the resolved config
/// into `dir`.
pub fn write_artifacts(cfg: &RunConfig, outcome: &RunOutcome, dir: &Path) -> Result<()> {
    io::write_json(dir.join(RESOLVED_CONFIG_FILE), cfg)?;
    io::write_contours(dir.join(CONTOURS_FILE), &outcome.global.contours)?;
    let local: Vec<_> = outcome
        .global
        .local_models
        .iter()
        .flat_map(|m| m.contours.iter().cloned())
        .collect();
    io::write_contours(dir.join(LOCAL_CONTOURS_FILE), &local)?;
    io::write_points(
        dir.join(ASSIGNMENTS_FILE),
        &Dataset {
            points: outcome.dataset.points.clone(),
            labels: Some(outcome.assignments.labels.clone()),
        },
    )?;
    io::write_trace(dir.join(TRACE_FILE), &outcome.global.merge_trace)?;
    io::write_json(dir.join(REPORT_FILE), &outcome.report)
}
