use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::htbreaks::{head_tail_breaks, DEFAULT_HEAD_FRACTION_CAP};
use crate::evaluation::spearman::{spearman, spearman_p_value};
use crate::graph::LabelSet;

/// Quantity the head/tail partition is computed on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionOn {
    #[default]
    Labels,
    Scores,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Head,
    Tail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HtPartScore {
    pub level: usize,
    pub part: Part,
    pub n: usize,
    pub spearman: f64,
}

/// Agreement between a ranking and the labels, overall and per head/tail part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub overall_spearman: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
    pub per_ht: Vec<HtPartScore>,
    pub n_evaluated: usize,
}

impl EvaluationReport {
    pub fn per_ht_head(&self) -> BTreeMap<usize, f64> {
        self.part_map(Part::Head)
    }

    pub fn per_ht_tail(&self) -> BTreeMap<usize, f64> {
        self.part_map(Part::Tail)
    }

    fn part_map(&self, part: Part) -> BTreeMap<usize, f64> {
        self.per_ht
            .iter()
            .filter(|p| p.part == part)
            .map(|p| (p.level, p.spearman))
            .collect()
    }
}

/// Parts smaller than this are left out of the report.
pub const MIN_PART_SIZE: usize = 3;

/// Spearman of `scores` against `labels` overall and inside every head and
/// tail part of the head/tail breaks of the chosen quantity.
///
/// Parts with fewer than three members, or on which the correlation is
/// undefined (constant values), are absent.
pub fn ht_level_report(
    scores: &[f64],
    labels: &LabelSet,
    partition_on: PartitionOn,
) -> Result<EvaluationReport> {
    if let Some(&bad) = labels.nodes().iter().find(|&&u| u >= scores.len()) {
        return Err(Error::DimensionMismatch(format!(
            "labeled node {bad} has no score"
        )));
    }
    let n = labels.len();
    if n < MIN_PART_SIZE {
        return Err(Error::InvalidParameter(format!(
            "evaluation needs at least {MIN_PART_SIZE} labeled nodes, got {n}"
        )));
    }
    let predicted: Vec<f64> = labels.nodes().iter().map(|&u| scores[u]).collect();
    let truth = labels.values();
    let overall = spearman(&predicted, truth)?;

    let basis: &[f64] = match partition_on {
        PartitionOn::Labels => truth,
        PartitionOn::Scores => &predicted,
    };
    let partition = head_tail_breaks(basis, DEFAULT_HEAD_FRACTION_CAP)?;
    let mut per_ht = Vec::new();
    for level in partition.levels.iter().filter(|l| !l.head.is_empty()) {
        for (part, members) in [(Part::Head, &level.head), (Part::Tail, &level.tail)] {
            if members.len() < MIN_PART_SIZE {
                continue;
            }
            let p: Vec<f64> = members.iter().map(|&i| predicted[i]).collect();
            let y: Vec<f64> = members.iter().map(|&i| truth[i]).collect();
            match spearman(&p, &y) {
                Ok(rho) => per_ht.push(HtPartScore {
                    level: level.level,
                    part,
                    n: members.len(),
                    spearman: rho,
                }),
                Err(Error::UndefinedCorrelation(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(EvaluationReport {
        overall_spearman: overall,
        p_value: spearman_p_value(overall, n),
        per_ht,
        n_evaluated: n,
    })
}
