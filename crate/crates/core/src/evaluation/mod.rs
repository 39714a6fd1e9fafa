//! Metrics and experiment protocols.

pub mod cv;
pub mod htbreaks;
mod report;
mod spearman;
pub mod sweep;
pub mod synth;

pub use cv::{
    cross_validate, split_labels, train_size, CvOptions, CvSummary, Ranker, SplitStrategy,
};
pub use htbreaks::{head_tail_breaks, HtLevel, HtPartition, DEFAULT_HEAD_FRACTION_CAP};
pub use report::{
    ht_level_report, EvaluationReport, HtPartScore, Part, PartitionOn, MIN_PART_SIZE,
};
pub use spearman::{fractional_ranks, spearman, spearman_p_value};
pub use sweep::{default_fractions, sample_size_sweep, write_sweep_csv, SweepPoint};
pub use synth::{generate_synthetic, generate_synthetic_with, SynthConfig, SyntheticDataset};
