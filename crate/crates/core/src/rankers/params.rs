use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AttributeMatrix, GroupAssignment};
use crate::scalar::Scalar;

/// Upper bound on every damping factor. Keeping `d < 1` makes the
/// fixed-point map a strict contraction.
pub const DAMPING_CAP: f64 = 0.99;

/// How attribute values are combined into a node's teleport mass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Combination {
    #[default]
    Linear,
}

/// Per-group damping factors and attribute weights.
#[derive(Debug, Clone, PartialEq)]
pub struct HnrParams<T> {
    damping: Vec<T>,
    attr_weights: Vec<Vec<T>>,
    combination: Combination,
}

impl<T: Scalar> HnrParams<T> {
    pub fn new(damping: Vec<T>, attr_weights: Vec<Vec<T>>) -> Result<Self> {
        if damping.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one group is required".into(),
            ));
        }
        if damping.len() != attr_weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} damping factors but {} attribute weight vectors",
                damping.len(),
                attr_weights.len()
            )));
        }
        let m = attr_weights[0].len();
        if m == 0 || attr_weights.iter().any(|a| a.len() != m) {
            return Err(Error::DimensionMismatch(
                "attribute weight vectors must share one non-zero length".into(),
            ));
        }
        let cap = T::lit(DAMPING_CAP);
        if let Some((k, d)) = damping
            .iter()
            .enumerate()
            .find(|(_, &d)| !(d >= T::zero() && d <= cap))
        {
            return Err(Error::InvalidParameter(format!(
                "damping of group {k} is {d}, must lie in [0, {DAMPING_CAP}]"
            )));
        }
        for (k, a) in attr_weights.iter().enumerate() {
            if let Some(w) = a.iter().find(|&&w| !(w >= T::zero() && w <= T::one())) {
                return Err(Error::InvalidParameter(format!(
                    "attribute weight {w} of group {k} outside [0, 1]"
                )));
            }
        }
        Ok(Self {
            damping,
            attr_weights,
            combination: Combination::Linear,
        })
    }

    /// One damping factor and weight vector shared by `k` groups.
    pub fn uniform(k: usize, damping: T, weights: Vec<T>) -> Result<Self> {
        Self::new(vec![damping; k], vec![weights; k])
    }

    pub fn groups(&self) -> usize {
        self.damping.len()
    }

    pub fn attr_dim(&self) -> usize {
        self.attr_weights[0].len()
    }

    pub fn damping(&self) -> &[T] {
        &self.damping
    }

    pub fn attr_weights(&self) -> &[Vec<T>] {
        &self.attr_weights
    }

    pub fn combination(&self) -> Combination {
        self.combination
    }

    /// Checks that the parameter shape matches the attribute matrix and grouping.
    pub fn check_compatible(
        &self,
        attrs: &AttributeMatrix<T>,
        groups: &GroupAssignment,
    ) -> Result<()> {
        if self.groups() != groups.k() {
            return Err(Error::DimensionMismatch(format!(
                "parameters have {} groups, grouping has {}",
                self.groups(),
                groups.k()
            )));
        }
        if self.attr_dim() != attrs.cols() {
            return Err(Error::DimensionMismatch(format!(
                "parameters weight {} attributes, matrix has {}",
                self.attr_dim(),
                attrs.cols()
            )));
        }
        if attrs.rows() != groups.node_count() {
            return Err(Error::DimensionMismatch(format!(
                "attribute matrix has {} rows, grouping covers {} nodes",
                attrs.rows(),
                groups.node_count()
            )));
        }
        Ok(())
    }

    pub fn damping_per_node(&self, groups: &GroupAssignment) -> Vec<T> {
        groups.as_slice().iter().map(|&g| self.damping[g]).collect()
    }
}
