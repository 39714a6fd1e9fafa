use rand::Rng as _;

use crate::calibration::ga::{finish, random_population, score, stop_early};
use crate::calibration::result::Tracker;
use crate::calibration::{CalibrationConfig, CalibrationProblem, CalibrationResult, Optimizer};
use crate::error::{Error, Result};
use crate::seed::{self, stream, Rng};

/// DE/rand/1/bin trial vector for `target`, clipped to `[0, 1]`.
pub fn de_trial(
    rng: &mut Rng,
    population: &[Vec<f64>],
    target: usize,
    f: f64,
    cr: f64,
) -> Vec<f64> {
    let n = population.len();
    let mut pick = |exclude: &[usize]| loop {
        let c = rng.random_range(0..n);
        if !exclude.contains(&c) {
            break c;
        }
    };
    let r1 = pick(&[target]);
    let r2 = pick(&[target, r1]);
    let r3 = pick(&[target, r1, r2]);
    let dim = population[target].len();
    let forced = rng.random_range(0..dim);
    (0..dim)
        .map(|j| {
            if j == forced || rng.random::<f64>() < cr {
                (population[r1][j] + f * (population[r2][j] - population[r3][j])).clamp(0.0, 1.0)
            } else {
                population[target][j]
            }
        })
        .collect()
}

/// Differential evolution calibration with greedy one-to-one replacement.
pub fn de_optimize(
    problem: &CalibrationProblem<'_>,
    config: &CalibrationConfig,
    seed: u64,
) -> Result<CalibrationResult> {
    config.validate()?;
    if config.population < 4 {
        return Err(Error::InvalidParameter(
            "differential evolution needs at least 4 members".into(),
        ));
    }
    let mut rng = seed::rng(seed, stream::DE, 0);
    let mut population = random_population(&mut rng, config.population, problem.gene_count());
    let mut tracker = Tracker::new();

    let (mut fitness, mut losses) = score(problem, &population)?;
    tracker.record(&population, &fitness, &losses);
    for _ in 1..config.generations {
        if stop_early(config, &tracker) {
            break;
        }
        let trials: Vec<Vec<f64>> = (0..population.len())
            .map(|i| de_trial(&mut rng, &population, i, config.de_f, config.de_cr))
            .collect();
        let (trial_fitness, trial_losses) = score(problem, &trials)?;
        for (i, trial) in trials.into_iter().enumerate() {
            if trial_fitness[i] >= fitness[i] {
                population[i] = trial;
                fitness[i] = trial_fitness[i];
                losses[i] = trial_losses[i];
            }
        }
        tracker.record(&population, &fitness, &losses);
    }
    finish(problem, tracker, Optimizer::De)
}
