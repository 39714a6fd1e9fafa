use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::calibration::CalibrationConfig;
use crate::error::{Error, Result};
use crate::evaluation::cv::{cross_validate, CvOptions};
use crate::graph::io::format_significant;
use crate::graph::{AttributeMatrix, GroupAssignment, LabelSet, WeightedDigraph};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub fraction: f64,
    pub mean_spearman: f64,
    pub sd_spearman: f64,
}

/// 0.1, 0.2, …, 0.9.
pub fn default_fractions() -> Vec<f64> {
    (1..=9).map(|i| i as f64 / 10.0).collect()
}

/// Cross-validation at each training fraction. Every fraction uses the same
/// root seed, so a one-element sweep equals a plain cross-validation run.
#[allow(clippy::too_many_arguments)]
pub fn sample_size_sweep(
    graph: &WeightedDigraph<f64>,
    attrs: &AttributeMatrix<f64>,
    groups: &GroupAssignment,
    labels: &LabelSet,
    config: &CalibrationConfig,
    fractions: &[f64],
    options: &CvOptions,
    seed: u64,
) -> Result<Vec<SweepPoint>> {
    if fractions.is_empty() {
        return Err(Error::InvalidParameter(
            "sweep needs at least one fraction".into(),
        ));
    }
    fractions
        .iter()
        .map(|&fraction| {
            let opts = CvOptions {
                train_fraction: fraction,
                ..*options
            };
            let s = cross_validate(graph, attrs, groups, labels, config, &opts, seed)?;
            Ok(SweepPoint {
                fraction,
                mean_spearman: s.mean,
                sd_spearman: s.sd,
            })
        })
        .collect()
}

/// Writes `fraction,mean_spearman,sd_spearman`.
pub fn write_sweep_csv<W: Write>(mut out: W, points: &[SweepPoint]) -> std::io::Result<()> {
    writeln!(out, "fraction,mean_spearman,sd_spearman")?;
    for p in points {
        writeln!(
            out,
            "{},{},{}",
            format_significant(p.fraction, 12),
            format_significant(p.mean_spearman, 12),
            format_significant(p.sd_spearman, 12)
        )?;
    }
    Ok(())
}
