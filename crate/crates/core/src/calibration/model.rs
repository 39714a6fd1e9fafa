use serde::{Deserialize, Serialize};

use crate::calibration::{
    BootstrapIntervals, CalibrationResult, GenerationStats, LossKind, Optimizer,
};
use crate::error::{Error, Result};
use crate::rankers::{HnrParams, DAMPING_CAP};

/// JSON export of a calibrated model.
///
/// `damping_cap` records that damping factors are confined to `[0, 0.99]`
/// rather than `[0, 1]`. Only `groups`, `damping` and `attr_weights` are
/// required on input, so hand-written parameter files load too.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelExport {
    pub groups: usize,
    pub damping: Vec<f64>,
    pub attr_weights: Vec<Vec<f64>>,
    #[serde(default)]
    pub attribute_names: Vec<String>,
    #[serde(default)]
    pub loss: LossKind,
    #[serde(default)]
    pub best_fitness: f64,
    #[serde(default)]
    pub fitness_history: Vec<GenerationStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bootstrap: Option<BootstrapIntervals>,
    #[serde(default = "default_cap")]
    pub damping_cap: f64,
    #[serde(default)]
    pub optimizer: Optimizer,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default)]
    pub train_node_ids: Vec<String>,
    /// `(node_id, group)` for every node, when known.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub node_groups: Vec<(String, usize)>,
}

fn default_cap() -> f64 {
    DAMPING_CAP
}

fn default_tol() -> f64 {
    crate::rankers::DEFAULT_TOL
}

fn default_max_iter() -> usize {
    crate::rankers::DEFAULT_MAX_ITER
}

impl ModelExport {
    pub fn from_result(
        result: &CalibrationResult,
        attribute_names: Vec<String>,
        node_ids: &[String],
        node_groups: &[usize],
        tol: f64,
        max_iter: usize,
    ) -> Self {
        Self {
            groups: result.best_params.groups(),
            damping: result.best_params.damping().to_vec(),
            attr_weights: result.best_params.attr_weights().to_vec(),
            attribute_names,
            loss: result.loss,
            best_fitness: result.best_fitness,
            fitness_history: result.fitness_history.clone(),
            bootstrap: result.bootstrap.clone(),
            damping_cap: DAMPING_CAP,
            optimizer: result.optimizer,
            tol,
            max_iter,
            train_node_ids: result
                .train_nodes
                .iter()
                .map(|&i| node_ids[i].clone())
                .collect(),
            node_groups: node_ids
                .iter()
                .cloned()
                .zip(node_groups.iter().copied())
                .collect(),
        }
    }

    pub fn params(&self) -> Result<HnrParams<f64>> {
        if self.damping.len() != self.groups {
            return Err(Error::DimensionMismatch(format!(
                "model declares {} groups but has {} damping factors",
                self.groups,
                self.damping.len()
            )));
        }
        HnrParams::new(self.damping.clone(), self.attr_weights.clone())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
