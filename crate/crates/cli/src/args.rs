use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "hnr",
    version,
    about = "Node-influence ranking, calibration and evaluation"
)]
pub struct Cli {
    /// Root seed for every random choice (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for parallel sections; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory receiving outputs and manifests.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Suppress progress messages on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank nodes with one algorithm.
    Rank(RankArgs),
    /// Fit model parameters against labeled nodes.
    Calibrate(CalibrateArgs),
    /// Compare a ranking with labels, overall and per head/tail level.
    Evaluate(EvaluateArgs),
    /// Repeated train/test evaluation of one model.
    Cv(CvArgs),
    /// Cross-validation across training fractions.
    Sweep(SweepArgs),
    /// Head/tail breaks of a value column.
    Htbreaks(HtArgs),
    /// Generate a synthetic dataset with known parameters.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Pagerank,
    Wpr,
    Attrirank,
    Exf,
    Hnr,
}

#[derive(Debug, Args, Serialize)]
pub struct RankArgs {
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Edge CSV `source,target,weight`.
    #[arg(long)]
    pub edges: PathBuf,
    /// Attribute CSV `node_id,<attr_1>,...` (attrirank, hnr).
    #[arg(long)]
    pub attrs: Option<PathBuf>,
    /// Model JSON with `groups`, `damping` and `attr_weights` (hnr).
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// `auto` or a group CSV `node_id,group` (hnr); defaults to the grouping
    /// stored in the model.
    #[arg(long)]
    pub groups: Option<String>,
    /// Damping factor (pagerank, wpr).
    #[arg(long, default_value_t = 0.85)]
    pub damping: f64,
    /// RBF kernel width (attrirank); defaults to 1/m.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Link-preference draws (attrirank).
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    /// Single seed node (exf).
    #[arg(long)]
    pub node: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Output file name inside the output directory.
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerArg {
    Ga,
    De,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LossArg {
    L1,
    L2,
    NegSpearman,
}

/// Inputs and search settings shared by calibrate, cv and sweep.
#[derive(Debug, Args, Serialize)]
pub struct DataArgs {
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long)]
    pub attrs: PathBuf,
    /// Label CSV `node_id,label`.
    #[arg(long)]
    pub labels: PathBuf,
    /// `auto` (head/tail breaks on in-strength) or a group CSV.
    #[arg(long, default_value = "auto")]
    pub groups: String,
    /// Maximum head/tail levels for `--groups auto`; at most levels + 1 groups.
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    /// Calibration config file (`key = value` lines).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub optimizer: Option<OptimizerArg>,
    #[arg(long, value_enum)]
    pub loss: Option<LossArg>,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
pub struct CalibrateArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Calibrate on a random share of the labels instead of all of them.
    #[arg(long)]
    pub train_frac: Option<f64>,
    /// Bootstrap resamples for parameter intervals.
    #[arg(long)]
    pub bootstrap: Option<usize>,
    #[arg(long, default_value = "model.json")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionArg {
    Labels,
    Scores,
}

#[derive(Debug, Args, Serialize)]
pub struct EvaluateArgs {
    /// Rank CSV `node_id,score,rank`.
    #[arg(long)]
    pub ranks: PathBuf,
    #[arg(long)]
    pub labels: PathBuf,
    /// Model JSON whose training nodes are left out of the evaluation.
    #[arg(long)]
    pub held_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "labels")]
    pub partition_on: PartitionArg,
    #[arg(long, default_value = "report.json")]
    pub output: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitArg {
    Random,
    Stratified,
}

#[derive(Debug, Args, Serialize)]
pub struct CvArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// hnr_el (hnr), hnr_e, hnr_l, pagerank, wpr, attrirank or exf.
    #[arg(long, default_value = "hnr_el")]
    pub model: String,
    #[arg(long, default_value_t = 0.3)]
    pub train_frac: f64,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    #[arg(long, value_enum, default_value = "random")]
    pub split: SplitArg,
    #[arg(long, default_value = "cv.json")]
    pub output: String,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, default_value = "hnr_el")]
    pub model: String,
    /// Comma-separated training fractions; defaults to 0.1,...,0.9.
    #[arg(long, value_delimiter = ',')]
    pub fractions: Option<Vec<f64>>,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    #[arg(long, value_enum, default_value = "random")]
    pub split: SplitArg,
    #[arg(long, default_value = "sweep.csv")]
    pub output: String,
}

#[derive(Debug, Args, Serialize)]
pub struct HtArgs {
    /// CSV `node_id,<value>`; the second column is partitioned.
    #[arg(long)]
    pub values: PathBuf,
    /// Largest head share of its parent set.
    #[arg(long, default_value_t = 0.4)]
    pub cap: f64,
    #[arg(long, default_value = "htbreaks.json")]
    pub output: String,
}

#[derive(Debug, Args, Serialize)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 300)]
    pub nodes: usize,
    /// Upper bound on the number of groups.
    #[arg(long, default_value_t = 2)]
    pub groups: usize,
    /// Attribute count.
    #[arg(long, default_value_t = 3)]
    pub attrs: usize,
    /// Label noise in standardized log-score units.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 3)]
    pub out_degree: usize,
    #[arg(long, default_value_t = 0.3)]
    pub reciprocity: f64,
}
