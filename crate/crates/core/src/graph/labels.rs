use std::collections::HashSet;

use crate::error::{Error, Result};

/// Observed influence indicator for a subset of nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelSet {
    nodes: Vec<usize>,
    values: Vec<f64>,
}

impl LabelSet {
    /// Rejects duplicate nodes, nodes outside `0..node_count`, and non-finite values.
    pub fn new(entries: Vec<(usize, f64)>, node_count: usize) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut dups = Vec::new();
        for &(n, v) in &entries {
            if n >= node_count {
                return Err(Error::UnknownNodes {
                    context: "labels".into(),
                    ids: vec![n.to_string()],
                });
            }
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "label for node {n} is not finite"
                )));
            }
            if !seen.insert(n) {
                dups.push(n.to_string());
            }
        }
        if !dups.is_empty() {
            return Err(Error::DuplicateNodes {
                context: "labels".into(),
                ids: dups,
            });
        }
        let (nodes, values) = entries.into_iter().unzip();
        Ok(Self { nodes, values })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.nodes.iter().copied().zip(self.values.iter().copied())
    }

    /// Sub-sample by positions into this set (positions may repeat).
    pub fn sample(&self, positions: &[usize]) -> LabelSample {
        LabelSample {
            nodes: positions.iter().map(|&p| self.nodes[p]).collect(),
            values: positions.iter().map(|&p| self.values[p]).collect(),
        }
    }

    pub fn as_sample(&self) -> LabelSample {
        LabelSample {
            nodes: self.nodes.clone(),
            values: self.values.clone(),
        }
    }

    /// Restriction to the labeled nodes in `keep` (positions into this set).
    pub fn subset(&self, positions: &[usize]) -> LabelSet {
        LabelSet {
            nodes: positions.iter().map(|&p| self.nodes[p]).collect(),
            values: positions.iter().map(|&p| self.values[p]).collect(),
        }
    }
}

/// Labeled nodes as used by a loss; unlike [`LabelSet`] a node may repeat
/// (bootstrap resamples).
#[derive(Debug, Clone, PartialEq)]
pub struct LabelSample {
    pub nodes: Vec<usize>,
    pub values: Vec<f64>,
}

impl LabelSample {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn distinct_nodes(&self) -> usize {
        self.nodes.iter().collect::<HashSet<_>>().len()
    }
}
