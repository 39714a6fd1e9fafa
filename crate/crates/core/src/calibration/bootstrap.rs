use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::calibration::{calibrate, CalibrationConfig, CalibrationProblem};
use crate::error::{Error, Result};
use crate::graph::LabelSample;
use crate::seed::{self, derive_seed, stream};

const MAX_REDRAWS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// 2.5% / 97.5% percentile intervals of every decoded parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapIntervals {
    pub resamples: usize,
    pub damping: Vec<Interval>,
    pub attr_weights: Vec<Vec<Interval>>,
}

/// Linear-interpolation percentile of a sorted slice, `q` in `[0, 1]`.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Refits the model on `resamples` bootstrap draws of the training labels.
///
/// Each draw samples the training set with replacement and is redrawn while it
/// has fewer than three distinct nodes. The refit seed is derived from the
/// root seed and the sorted draw, so identical draws produce identical fits.
/// Refits use `config` as given; pass `config.reduced()` for the cheaper
/// default budget.
pub fn bootstrap_coefficients(
    problem: &CalibrationProblem<'_>,
    config: &CalibrationConfig,
    resamples: usize,
    seed: u64,
) -> Result<BootstrapIntervals> {
    if resamples < 10 {
        return Err(Error::InvalidParameter(
            "bootstrap needs at least 10 resamples".into(),
        ));
    }
    let train = &problem.train;
    let n = train.len();
    let mut rng = seed::rng(seed, stream::BOOTSTRAP_DRAW, 0);
    let (k, m) = (problem.k(), problem.m());
    let mut damping: Vec<Vec<f64>> = vec![Vec::with_capacity(resamples); k];
    let mut weights: Vec<Vec<Vec<f64>>> = vec![vec![Vec::with_capacity(resamples); m]; k];

    for _ in 0..resamples {
        let mut draw = None;
        for _ in 0..MAX_REDRAWS {
            let positions: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
            let sample = LabelSample {
                nodes: positions.iter().map(|&p| train.nodes[p]).collect(),
                values: positions.iter().map(|&p| train.values[p]).collect(),
            };
            if sample.distinct_nodes() >= 3 {
                draw = Some((positions, sample));
                break;
            }
        }
        let (mut positions, sample) = draw.ok_or_else(|| {
            Error::InvalidParameter(format!(
                "no bootstrap draw with three distinct nodes after {MAX_REDRAWS} attempts"
            ))
        })?;
        positions.sort_unstable();
        let fit_seed = positions
            .iter()
            .fold(derive_seed(seed, stream::BOOTSTRAP_FIT, 0), |h, &p| {
                derive_seed(h, stream::BOOTSTRAP_FIT, p as u64)
            });

        let sub = CalibrationProblem {
            train: sample,
            ..problem.clone()
        };
        let fit = calibrate(&sub, config, fit_seed)?;
        for g in 0..k {
            damping[g].push(fit.best_params.damping()[g]);
            for j in 0..m {
                weights[g][j].push(fit.best_params.attr_weights()[g][j]);
            }
        }
    }

    let interval = |mut xs: Vec<f64>| {
        xs.sort_by(|a, b| a.total_cmp(b));
        Interval {
            lo: percentile(&xs, 0.025),
            hi: percentile(&xs, 0.975),
        }
    };
    Ok(BootstrapIntervals {
        resamples,
        damping: damping.into_iter().map(interval).collect(),
        attr_weights: weights
            .into_iter()
            .map(|g| g.into_iter().map(interval).collect())
            .collect(),
    })
}
