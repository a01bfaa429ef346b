//! The `ddc` command-line interface.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ddc_core::data::{generate, DatasetSpec, PRESET_NAMES};
use ddc_core::eval::{adjusted_rand_index, EvalReport};
use ddc_core::NOISE;

use crate::bench::{self, BenchOptions, SCALABILITY_NODES, SCALABILITY_POINTS};
use crate::config::{self, ConfigFile, Overrides, RunConfig};
use crate::error::{Error, Result};
use crate::{io, run};

#[derive(Debug, Parser)]
#[command(
    name = "ddc",
    version,
    about = "Dynamic distributed clustering simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Generate a benchmark dataset as a point CSV with ground truth.
    Generate(GenerateArgs),
    /// Run distributed clustering and write contours, assignments and a report.
    Run(RunArgs),
    /// Time backends on the presets, or sweep node counts.
    Bench(BenchArgs),
    /// Compare an assignment CSV against a ground-truth CSV.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Preset name, t1..t6.
    #[arg(long, conflicts_with = "spec")]
    pub preset: Option<String>,
    /// Dataset spec JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output CSV path [default: <preset>.csv or dataset.csv].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the resolved spec as JSON.
    #[arg(long)]
    pub spec_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub preset: Option<String>,
    /// Point CSV with header x,y[,label].
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Dataset spec JSON file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Seed for dataset generation, partitioning and K-Means.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Tree degree D.
    #[arg(long)]
    pub degree: Option<usize>,
    /// dbscan or kmeans.
    #[arg(long)]
    pub backend: Option<String>,
    /// DBSCAN neighbour search: grid_index, distance_matrix or brute_force.
    #[arg(long)]
    pub dbscan_index: Option<String>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long = "minpts")]
    pub min_pts: Option<usize>,
    /// K-Means clusters per node.
    #[arg(long)]
    pub k: Option<usize>,
    /// Normalised contour parameter in [0, 1].
    #[arg(long)]
    pub lambda: Option<f64>,
    /// polygon_overlap or boundary_proximity.
    #[arg(long)]
    pub policy: Option<String>,
    /// "auto" or a distance.
    #[arg(long)]
    pub proximity_eps: Option<String>,
    #[arg(long)]
    pub density_gate: Option<f64>,
    /// spatial_grid, random or round_robin.
    #[arg(long)]
    pub partition: Option<String>,
    /// Worker thread cap.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            preset: self.preset.clone(),
            input: self.input.clone(),
            spec: self.spec.clone(),
            seed: self.seed,
            nodes: self.nodes,
            degree: self.degree,
            backend: self.backend.clone(),
            dbscan_index: self.dbscan_index.clone(),
            eps: self.eps,
            min_pts: self.min_pts,
            k: self.k,
            lambda: self.lambda,
            policy: self.policy.clone(),
            proximity_eps: self.proximity_eps.clone(),
            density_gate: self.density_gate,
            partition: self.partition.clone(),
            threads: self.threads,
            out: self.out.clone(),
        }
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated presets for the backend table.
    #[arg(long, value_delimiter = ',', default_values_t = PRESET_NAMES.map(String::from))]
    pub presets: Vec<String>,
    /// Repetitions per measurement; medians are reported.
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 5)]
    pub nodes: usize,
    #[arg(long, default_value_t = 2)]
    pub degree: usize,
    /// Sweep node counts 1, 2, 4, ... on the scalability dataset instead.
    #[arg(long)]
    pub scalability: bool,
    /// Points in the scalability dataset.
    #[arg(long, default_value_t = SCALABILITY_POINTS)]
    pub points: usize,
    /// Largest node count of the sweep.
    #[arg(long, default_value_t = 64)]
    pub max_nodes: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = "ddc-out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// CSV with predicted labels.
    #[arg(long)]
    pub assignments: PathBuf,
    /// CSV with ground-truth labels.
    #[arg(long)]
    pub truth: PathBuf,
    /// Also write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` and runs the command, returning the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Run(a) => cmd_run(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Evaluate(a) => cmd_evaluate(&a),
    }
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<()> {
    let (mut spec, default_out): (DatasetSpec, String) = match (&a.preset, &a.spec) {
        (Some(name), _) => {
            let p = config::lookup_preset(name)?;
            (p.spec, format!("{}.csv", p.name))
        }
        (None, Some(path)) => (config::load_spec(path)?, "dataset.csv".into()),
        (None, None) => return Err(Error::config("generate needs --preset or --spec")),
    };
    if let Some(seed) = a.seed {
        spec.seed = seed;
    }
    let dataset = generate(&spec)?;
    let out = a.out.clone().unwrap_or_else(|| PathBuf::from(default_out));
    io::write_points(&out, &dataset)?;
    if let Some(path) = &a.spec_out {
        io::write_json(path, &spec)?;
    }
    let noise = dataset
        .labels
        .as_ref()
        .map_or(0, |l| l.iter().filter(|&&x| x == NOISE).count());
    println!(
        "points={} clusters={} noise={} out={}",
        dataset.len(),
        spec.shapes.len(),
        noise,
        out.display()
    );
    Ok(())
}

pub fn cmd_run(a: &RunArgs) -> Result<()> {
    let file = match &a.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(file, &a.overrides())?;
    let outcome = run::execute(&cfg)?;
    run::write_artifacts(&cfg, &outcome, &cfg.out)?;
    let r = &outcome.report;
    println!(
        "clusters={} expected={} ari={} reduction={:.4} bytes={} levels={} makespan_ms={:.3} out={}",
        r.n_clusters_found,
        r.n_clusters_expected.map_or("-".into(), |k| k.to_string()),
        r.ari.map_or("-".into(), |x| format!("{x:.4}")),
        r.reduction_ratio,
        r.bytes_exchanged,
        r.levels,
        r.total_ms,
        cfg.out.display()
    );
    Ok(())
}

pub fn cmd_bench(a: &BenchArgs) -> Result<()> {
    let (file, csv) = if a.scalability {
        let counts: Vec<usize> = SCALABILITY_NODES
            .iter()
            .copied()
            .filter(|&n| n <= a.max_nodes)
            .collect();
        let rows = bench::scalability(a.points, &counts, a.degree, a.reps, a.seed)?;
        ("scalability.csv", bench::scalability_csv(&rows))
    } else {
        let presets = a
            .presets
            .iter()
            .map(|n| {
                let mut p = config::lookup_preset(n)?;
                p.spec.seed = a.seed;
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        let opts = BenchOptions {
            n_nodes: a.nodes,
            degree: a.degree,
            reps: a.reps,
        };
        (
            "table2.csv",
            bench::table2_csv(&bench::table2(&presets, &opts)?),
        )
    };
    io::write_text(a.out.join(file), &csv)?;
    print!("{csv}");
    Ok(())
}

/// Compares two labeled CSVs point by point.
pub fn evaluate_files(assignments: &Path, truth: &Path) -> Result<EvalReport> {
    let pred = io::read_points(assignments)?;
    let refr = io::read_points(truth)?;
    let labels = |d: &ddc_core::data::Dataset, p: &Path| {
        d.truth()
            .ok_or_else(|| Error::config(format!("{} has no label column", p.display())))
    };
    let pred_l = labels(&pred, assignments)?;
    let ref_l = labels(&refr, truth)?;
    let ari = adjusted_rand_index(&ref_l, &pred_l, true)?;
    Ok(EvalReport {
        ari: Some(ari),
        n_clusters_found: pred_l.n_clusters,
        n_clusters_expected: Some(ref_l.n_clusters),
        n_points: pred.len(),
        ..EvalReport::default()
    })
}

pub fn cmd_evaluate(a: &EvaluateArgs) -> Result<()> {
    let report = evaluate_files(&a.assignments, &a.truth)?;
    if let Some(path) = &a.out {
        io::write_json(path, &report)?;
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}
