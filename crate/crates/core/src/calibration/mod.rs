//! Supervised estimation of model parameters by evolutionary search.

mod bootstrap;
mod chromosome;
mod config;
mod de;
mod ga;
mod loss;
mod model;
mod objective;
mod result;

pub use bootstrap::{bootstrap_coefficients, percentile, BootstrapIntervals, Interval};
pub use chromosome::{chromosome_len, decode_chromosome, encode_params, Chromosome};
pub use config::{CalibrationConfig, Optimizer, BOOTSTRAP_GENERATIONS, BOOTSTRAP_POPULATION};
pub use de::{de_optimize, de_trial};
pub use ga::{ga_optimize, ga_optimize_from, gaussian_mutation, tournament, uniform_crossover};
pub use loss::{fitness, loss, LossKind};
pub use model::ModelExport;
pub use objective::{CalibrationProblem, Evaluation, ModelVariant};
pub use result::{CalibrationResult, GenerationStats};

use crate::error::Result;

/// Runs the optimizer selected in `config`.
pub fn calibrate(
    problem: &CalibrationProblem<'_>,
    config: &CalibrationConfig,
    seed: u64,
) -> Result<CalibrationResult> {
    match config.optimizer {
        Optimizer::Ga => ga_optimize(problem, config, seed),
        Optimizer::De => de_optimize(problem, config, seed),
    }
}
