use rand::Rng as _;
use rand_distr::{Distribution, Normal};

use crate::calibration::result::{argmax, Tracker};
use crate::calibration::{CalibrationConfig, CalibrationProblem, CalibrationResult, Optimizer};
use crate::error::{Error, Result};
use crate::seed::{self, stream, Rng};

/// Index of the fittest of `size` members drawn with replacement.
pub fn tournament(rng: &mut Rng, fitness: &[f64], size: usize) -> usize {
    let mut best = rng.random_range(0..fitness.len());
    for _ in 1..size {
        let c = rng.random_range(0..fitness.len());
        if fitness[c] > fitness[best] || (fitness[c] == fitness[best] && c < best) {
            best = c;
        }
    }
    best
}

/// Uniform crossover: with probability `rate` each gene position is swapped
/// between the children with probability 1/2; otherwise the parents are copied.
pub fn uniform_crossover(rng: &mut Rng, a: &[f64], b: &[f64], rate: f64) -> (Vec<f64>, Vec<f64>) {
    let (mut c1, mut c2) = (a.to_vec(), b.to_vec());
    if rng.random::<f64>() < rate {
        for i in 0..c1.len() {
            if rng.random::<bool>() {
                std::mem::swap(&mut c1[i], &mut c2[i]);
            }
        }
    }
    (c1, c2)
}

/// Adds `N(0, sigma)` noise to each gene with probability `rate`, clipped to `[0, 1]`.
pub fn gaussian_mutation(rng: &mut Rng, genes: &mut [f64], rate: f64, sigma: f64) {
    if sigma <= 0.0 {
        return;
    }
    let noise = Normal::new(0.0, sigma).expect("positive sigma");
    for g in genes.iter_mut() {
        if rng.random::<f64>() < rate {
            *g = (*g + noise.sample(rng)).clamp(0.0, 1.0);
        }
    }
}

pub(crate) fn random_population(rng: &mut Rng, size: usize, genes: usize) -> Vec<Vec<f64>> {
    (0..size)
        .map(|_| (0..genes).map(|_| rng.random::<f64>()).collect())
        .collect()
}

pub(crate) fn stop_early(config: &CalibrationConfig, tracker: &Tracker) -> bool {
    config.target_loss.is_some_and(|t| tracker.best_loss < t)
}

pub(crate) fn finish(
    problem: &CalibrationProblem<'_>,
    tracker: Tracker,
    optimizer: Optimizer,
) -> Result<CalibrationResult> {
    Ok(CalibrationResult {
        best_params: problem.decode(&tracker.best_genes)?,
        best_genes: tracker.best_genes,
        best_fitness: tracker.best_fitness,
        best_loss: tracker.best_loss,
        fitness_history: tracker.history,
        loss: problem.loss,
        optimizer,
        train_nodes: problem.train.nodes.clone(),
        bootstrap: None,
    })
}

/// Genetic algorithm calibration from a uniformly random initial population.
pub fn ga_optimize(
    problem: &CalibrationProblem<'_>,
    config: &CalibrationConfig,
    seed: u64,
) -> Result<CalibrationResult> {
    config.validate()?;
    let mut rng = seed::rng(seed, stream::GA, 0);
    let initial = random_population(&mut rng, config.population, problem.gene_count());
    evolve(problem, config, initial, rng)
}

/// Genetic algorithm calibration from a caller-supplied initial population.
pub fn ga_optimize_from(
    problem: &CalibrationProblem<'_>,
    config: &CalibrationConfig,
    initial: Vec<Vec<f64>>,
    seed: u64,
) -> Result<CalibrationResult> {
    config.validate()?;
    if initial.len() != config.population {
        return Err(Error::InvalidParameter(format!(
            "initial population has {} members, config expects {}",
            initial.len(),
            config.population
        )));
    }
    if initial
        .iter()
        .any(|g| g.len() != problem.gene_count() || g.iter().any(|x| !(0.0..=1.0).contains(x)))
    {
        return Err(Error::InvalidParameter(
            "initial population contains an invalid chromosome".into(),
        ));
    }
    let mut rng = seed::rng(seed, stream::GA, 0);
    // keep the operator stream aligned with ga_optimize
    let _ = random_population(&mut rng, config.population, problem.gene_count());
    evolve(problem, config, initial, rng)
}

fn evolve(
    problem: &CalibrationProblem<'_>,
    config: &CalibrationConfig,
    mut population: Vec<Vec<f64>>,
    mut rng: Rng,
) -> Result<CalibrationResult> {
    let genes = problem.gene_count();
    let mutation_rate = config.mutation_rate.unwrap_or(1.0 / genes as f64);
    let mut tracker = Tracker::new();

    let (mut fitness, mut losses) = score(problem, &population)?;
    tracker.record(&population, &fitness, &losses);
    for _ in 1..config.generations {
        if stop_early(config, &tracker) {
            break;
        }
        population = next_generation(&mut rng, &population, &fitness, config, mutation_rate);
        (fitness, losses) = score(problem, &population)?;
        tracker.record(&population, &fitness, &losses);
    }
    finish(problem, tracker, Optimizer::Ga)
}

pub(crate) fn score(
    problem: &CalibrationProblem<'_>,
    population: &[Vec<f64>],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let evals = problem.evaluate_all(population)?;
    Ok(evals.iter().map(|e| (e.fitness, e.loss)).unzip())
}

fn next_generation(
    rng: &mut Rng,
    population: &[Vec<f64>],
    fitness: &[f64],
    config: &CalibrationConfig,
    mutation_rate: f64,
) -> Vec<Vec<f64>> {
    let size = population.len();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| {
        fitness[b]
            .partial_cmp(&fitness[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    debug_assert!(config.elitism == 0 || order[0] == argmax(fitness));
    let mut next: Vec<Vec<f64>> = order[..config.elitism]
        .iter()
        .map(|&i| population[i].clone())
        .collect();
    while next.len() < size {
        let p1 = tournament(rng, fitness, config.tournament_size);
        let p2 = tournament(rng, fitness, config.tournament_size);
        let (mut c1, mut c2) =
            uniform_crossover(rng, &population[p1], &population[p2], config.crossover_rate);
        gaussian_mutation(rng, &mut c1, mutation_rate, config.mutation_sigma);
        gaussian_mutation(rng, &mut c2, mutation_rate, config.mutation_sigma);
        next.push(c1);
        if next.len() < size {
            next.push(c2);
        }
    }
    next
}
