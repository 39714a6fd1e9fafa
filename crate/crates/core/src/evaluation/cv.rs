use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::calibration::{calibrate, CalibrationConfig, CalibrationProblem, ModelVariant};
use crate::error::{Error, Result};
use crate::evaluation::spearman;
use crate::graph::groups::groups_from_values;
use crate::graph::{AttributeMatrix, GroupAssignment, LabelSet, WeightedDigraph};
use crate::rankers::{
    attrirank, expected_force_all, pagerank, weighted_pagerank, AttriRankConfig, DEFAULT_DAMPING,
};
use crate::seed::{self, derive_seed, stream};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitStrategy {
    #[default]
    Random,
    /// Proportional allocation across head/tail classes of the label values.
    StratifiedHt,
}

/// Model evaluated by cross-validation. Only the HNR variants are calibrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ranker {
    Hnr(ModelVariant),
    PageRank,
    WeightedPageRank,
    AttriRank,
    ExpectedForce,
}

impl Ranker {
    pub fn name(self) -> &'static str {
        match self {
            Ranker::Hnr(v) => v.name(),
            Ranker::PageRank => "pagerank",
            Ranker::WeightedPageRank => "wpr",
            Ranker::AttriRank => "attrirank",
            Ranker::ExpectedForce => "exf",
        }
    }
}

impl std::str::FromStr for Ranker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hnr" | "hnr_el" => Ranker::Hnr(ModelVariant::Full),
            "hnr_e" => Ranker::Hnr(ModelVariant::AttributesOnly),
            "hnr_l" => Ranker::Hnr(ModelVariant::LocalDamping),
            "pagerank" => Ranker::PageRank,
            "wpr" => Ranker::WeightedPageRank,
            "attrirank" => Ranker::AttriRank,
            "exf" => Ranker::ExpectedForce,
            other => return Err(Error::InvalidParameter(format!("unknown model `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvOptions {
    pub train_fraction: f64,
    pub repeats: usize,
    pub split: SplitStrategy,
    pub ranker: Ranker,
}

impl Default for CvOptions {
    fn default() -> Self {
        Self {
            train_fraction: 0.3,
            repeats: 10,
            split: SplitStrategy::Random,
            ranker: Ranker::Hnr(ModelVariant::Full),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvSummary {
    pub model: String,
    pub repeats: usize,
    pub train_fraction: f64,
    pub train_size: usize,
    pub per_repeat: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator); 0 for a single repeat.
    pub sd: f64,
}

/// `round(fraction · n)` with halves rounded up.
pub fn train_size(n: usize, fraction: f64) -> usize {
    (fraction * n as f64 + 0.5).floor() as usize
}

/// Positions (into `labels`) of the training and test sets for one repeat.
pub fn split_labels(
    labels: &LabelSet,
    fraction: f64,
    strategy: SplitStrategy,
    seed: u64,
    repeat: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = labels.len();
    let size = train_size(n, fraction);
    if !(fraction > 0.0 && fraction < 1.0) || size < 3 || n - size < 3 {
        return Err(Error::InvalidParameter(format!(
            "train fraction {fraction} of {n} labels leaves fewer than 3 nodes on one side"
        )));
    }
    let mut rng = seed::rng(seed, stream::CV_SPLIT, repeat as u64);
    let mut positions: Vec<usize> = (0..n).collect();
    positions.shuffle(&mut rng);
    let chosen: Vec<usize> = match strategy {
        SplitStrategy::Random => positions[..size].to_vec(),
        SplitStrategy::StratifiedHt => {
            let classes = groups_from_values(labels.values(), 8)?;
            // shuffled order is kept within each class
            positions.sort_by_key(|&p| classes.group_of(p));
            let offset: f64 = rng.random();
            (0..size)
                .map(|t| {
                    positions[(((t as f64 + offset) * n as f64) / size as f64).floor() as usize]
                })
                .collect()
        }
    };
    let mut in_train = vec![false; n];
    chosen.iter().for_each(|&p| in_train[p] = true);
    let mut train: Vec<usize> = (0..n).filter(|&p| in_train[p]).collect();
    let test: Vec<usize> = (0..n).filter(|&p| !in_train[p]).collect();
    train.sort_unstable();
    Ok((train, test))
}

fn uncalibrated_scores(
    ranker: Ranker,
    graph: &WeightedDigraph<f64>,
    attrs: &AttributeMatrix<f64>,
    seed: u64,
) -> Result<Vec<f64>> {
    Ok(match ranker {
        Ranker::PageRank => pagerank(graph, DEFAULT_DAMPING)?.scores,
        Ranker::WeightedPageRank => weighted_pagerank(graph, DEFAULT_DAMPING)?.scores,
        Ranker::AttriRank => attrirank(graph, attrs, AttriRankConfig::default(), seed)?.scores,
        // nodes without a two-step neighborhood rank lowest
        Ranker::ExpectedForce => expected_force_all(graph)
            .into_iter()
            .map(|x| x.unwrap_or(-1.0))
            .collect(),
        Ranker::Hnr(_) => unreachable!("calibrated models are fitted per split"),
    })
}

/// Repeated random train/test evaluation: calibrate on the training share,
/// score Spearman on the rest.
pub fn cross_validate(
    graph: &WeightedDigraph<f64>,
    attrs: &AttributeMatrix<f64>,
    groups: &GroupAssignment,
    labels: &LabelSet,
    config: &CalibrationConfig,
    options: &CvOptions,
    seed: u64,
) -> Result<CvSummary> {
    if options.repeats == 0 {
        return Err(Error::InvalidParameter("repeats must be at least 1".into()));
    }
    config.validate()?;
    let splits = (0..options.repeats)
        .map(|r| split_labels(labels, options.train_fraction, options.split, seed, r))
        .collect::<Result<Vec<_>>>()?;

    let fixed = match options.ranker {
        Ranker::Hnr(_) => None,
        other => Some(uncalibrated_scores(other, graph, attrs, seed)?),
    };
    let mut per_repeat = Vec::with_capacity(options.repeats);
    for (r, (train, test)) in splits.iter().enumerate() {
        let scores = match (&fixed, options.ranker) {
            (Some(s), _) => s.clone(),
            (None, Ranker::Hnr(variant)) => {
                let (v_attrs, v_groups) = variant.prepare(attrs, groups);
                let problem = CalibrationProblem::new(
                    graph,
                    &v_attrs,
                    &v_groups,
                    labels.sample(train),
                    config.loss,
                    config.iter_options(),
                )?;
                let fit = calibrate(
                    &problem,
                    config,
                    derive_seed(seed, stream::CV_FIT, r as u64),
                )?;
                problem.rank(&fit.best_params)?.scores
            }
            (None, _) => unreachable!(),
        };
        let test_set = labels.sample(test);
        let predicted: Vec<f64> = test_set.nodes.iter().map(|&u| scores[u]).collect();
        per_repeat.push(spearman(&predicted, &test_set.values)?);
    }
    let (mean, sd) = mean_sd(&per_repeat);
    Ok(CvSummary {
        model: options.ranker.name().to_string(),
        repeats: options.repeats,
        train_fraction: options.train_fraction,
        train_size: train_size(labels.len(), options.train_fraction),
        per_repeat,
        mean,
        sd,
    })
}

pub(crate) fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
