use serde::{Deserialize, Serialize};

use crate::calibration::{BootstrapIntervals, LossKind, Optimizer};
use crate::rankers::HnrParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub best: f64,
    pub mean: f64,
}

/// Outcome of one evolutionary calibration.
#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationResult {
    pub best_params: HnrParams<f64>,
    pub best_genes: Vec<f64>,
    pub best_fitness: f64,
    pub best_loss: f64,
    /// One entry per evaluated population; `best` never decreases.
    pub fitness_history: Vec<GenerationStats>,
    pub loss: LossKind,
    pub optimizer: Optimizer,
    pub train_nodes: Vec<usize>,
    pub bootstrap: Option<BootstrapIntervals>,
}

/// Tracks the best member seen so far and per-generation statistics.
#[derive(Debug, Default)]
pub(crate) struct Tracker {
    pub best_genes: Vec<f64>,
    pub best_fitness: f64,
    pub best_loss: f64,
    pub history: Vec<GenerationStats>,
}

impl Tracker {
    pub fn new() -> Self {
        Self {
            best_fitness: f64::NEG_INFINITY,
            best_loss: f64::INFINITY,
            ..Default::default()
        }
    }

    pub fn record(&mut self, members: &[Vec<f64>], fitness: &[f64], losses: &[f64]) {
        let best_idx = argmax(fitness);
        if fitness[best_idx] > self.best_fitness {
            self.best_fitness = fitness[best_idx];
            self.best_loss = losses[best_idx];
            self.best_genes = members[best_idx].clone();
        }
        let mean = fitness.iter().sum::<f64>() / fitness.len() as f64;
        self.history.push(GenerationStats {
            generation: self.history.len(),
            best: self.best_fitness,
            mean,
        });
    }
}

/// Index of the largest value, lowest index on ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}
