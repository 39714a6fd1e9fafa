use rayon::prelude::*;

use crate::calibration::{chromosome_len, decode_chromosome, fitness, loss, LossKind};
use crate::error::{Error, Result};
use crate::graph::{AttributeMatrix, GroupAssignment, LabelSample, WeightedDigraph};
use crate::rankers::{hnr_rank, HnrParams, IterOptions, RankVector};

/// Which parameters a calibration is free to move.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum ModelVariant {
    /// Group-local damping and attribute weights.
    #[default]
    Full,
    /// Group-local damping with uniform teleport.
    LocalDamping,
    /// One damping factor and one weight vector for all nodes.
    AttributesOnly,
}

impl ModelVariant {
    pub fn name(self) -> &'static str {
        match self {
            ModelVariant::Full => "hnr_el",
            ModelVariant::LocalDamping => "hnr_l",
            ModelVariant::AttributesOnly => "hnr_e",
        }
    }

    /// Inputs that realize the variant with the full model.
    pub fn prepare(
        self,
        attrs: &AttributeMatrix<f64>,
        groups: &GroupAssignment,
    ) -> (AttributeMatrix<f64>, GroupAssignment) {
        match self {
            ModelVariant::Full => (attrs.clone(), groups.clone()),
            ModelVariant::LocalDamping => (AttributeMatrix::uniform(attrs.rows()), groups.clone()),
            ModelVariant::AttributesOnly => (attrs.clone(), GroupAssignment::single(attrs.rows())),
        }
    }
}

/// Fitness outcome for one chromosome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    /// `f64::INFINITY` when the ranking failed to converge.
    pub loss: f64,
    pub fitness: f64,
}

/// Everything needed to score a parameter vector against training labels.
#[derive(Debug, Clone)]
pub struct CalibrationProblem<'a> {
    pub graph: &'a WeightedDigraph<f64>,
    pub attrs: &'a AttributeMatrix<f64>,
    pub groups: &'a GroupAssignment,
    pub train: LabelSample,
    pub loss: LossKind,
    pub iter: IterOptions<f64>,
}

impl<'a> CalibrationProblem<'a> {
    pub fn new(
        graph: &'a WeightedDigraph<f64>,
        attrs: &'a AttributeMatrix<f64>,
        groups: &'a GroupAssignment,
        train: LabelSample,
        loss: LossKind,
        iter: IterOptions<f64>,
    ) -> Result<Self> {
        let n = graph.node_count();
        if attrs.rows() != n || groups.node_count() != n {
            return Err(Error::DimensionMismatch(format!(
                "graph has {n} nodes, attributes {} rows, grouping {} nodes",
                attrs.rows(),
                groups.node_count()
            )));
        }
        let min = if loss == LossKind::NegSpearman { 3 } else { 2 };
        if train.len() < min {
            return Err(Error::InvalidParameter(format!(
                "calibration needs at least {min} training labels, got {}",
                train.len()
            )));
        }
        if let Some(&bad) = train.nodes.iter().find(|&&u| u >= n) {
            return Err(Error::InvalidParameter(format!(
                "training node {bad} out of range"
            )));
        }
        Ok(Self {
            graph,
            attrs,
            groups,
            train,
            loss,
            iter,
        })
    }

    pub fn k(&self) -> usize {
        self.groups.k()
    }

    pub fn m(&self) -> usize {
        self.attrs.cols()
    }

    pub fn gene_count(&self) -> usize {
        chromosome_len(self.k(), self.m())
    }

    pub fn decode(&self, genes: &[f64]) -> Result<HnrParams<f64>> {
        decode_chromosome(genes, self.k(), self.m())
    }

    pub fn rank(&self, params: &HnrParams<f64>) -> Result<RankVector<f64>> {
        hnr_rank(self.graph, self.attrs, self.groups, params, self.iter)
    }

    pub fn loss_of(&self, ranks: &RankVector<f64>) -> Result<f64> {
        let predicted: Vec<f64> = self.train.nodes.iter().map(|&u| ranks.scores[u]).collect();
        loss(&predicted, &self.train.values, self.loss)
    }

    /// Scores one gene vector. A ranking that fails to converge gets
    /// fitness 0 instead of an error.
    pub fn evaluate(&self, genes: &[f64]) -> Result<Evaluation> {
        let params = self.decode(genes)?;
        match self.rank(&params) {
            Ok(ranks) => {
                let l = self.loss_of(&ranks)?;
                Ok(Evaluation {
                    loss: l,
                    fitness: fitness(l)?,
                })
            }
            Err(e) if e.is_convergence() => Ok(Evaluation {
                loss: f64::INFINITY,
                fitness: 0.0,
            }),
            Err(e) => Err(e),
        }
    }

    /// Evaluates members independently (in parallel); output order matches input.
    pub fn evaluate_all(&self, members: &[Vec<f64>]) -> Result<Vec<Evaluation>> {
        let evals: Vec<Result<Evaluation>> = members.par_iter().map(|g| self.evaluate(g)).collect();
        evals.into_iter().collect()
    }
}
