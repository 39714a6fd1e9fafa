use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::evaluation::htbreaks::{head_tail_breaks, DEFAULT_HEAD_FRACTION_CAP};
use crate::graph::WeightedDigraph;
use crate::scalar::Scalar;

/// Total assignment of nodes to groups `0..K` with every group non-empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAssignment {
    group_of: Vec<usize>,
    k: usize,
}

impl GroupAssignment {
    /// Validates that the used group ids are exactly `0..K`.
    pub fn new(group_of: Vec<usize>) -> Result<Self> {
        if group_of.is_empty() {
            return Err(Error::InvalidParameter("group assignment is empty".into()));
        }
        let k = group_of.iter().max().map_or(0, |&g| g + 1);
        let mut used = vec![false; k];
        group_of.iter().for_each(|&g| used[g] = true);
        if let Some(missing) = used.iter().position(|u| !u) {
            return Err(Error::InvalidParameter(format!(
                "group ids must be contiguous: group {missing} has no members"
            )));
        }
        Ok(Self { group_of, k })
    }

    /// Relabels arbitrary integer group labels onto `0..K` in ascending label order.
    pub fn from_labels(labels: &[i64]) -> Result<Self> {
        let mut remap = BTreeMap::new();
        labels.iter().for_each(|&l| {
            remap.insert(l, 0);
        });
        for (i, v) in remap.values_mut().enumerate() {
            *v = i;
        }
        Self::new(labels.iter().map(|l| remap[l]).collect())
    }

    pub fn single(n: usize) -> Self {
        Self {
            group_of: vec![0; n],
            k: 1,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.group_of.len()
    }

    pub fn group_of(&self, node: usize) -> usize {
        self.group_of[node]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.group_of
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        self.group_of.iter().for_each(|&g| sizes[g] += 1);
        sizes
    }
}

/// Groups nodes by head/tail breaks on weighted in-degree.
///
/// Group 0 is the innermost head; each shallower tail gets the next id, so a
/// run with `L` recorded levels yields `L + 1` groups.
pub fn assign_groups_default<T: Scalar>(
    graph: &WeightedDigraph<T>,
    max_levels: usize,
) -> Result<GroupAssignment> {
    if max_levels == 0 {
        return Err(Error::InvalidParameter(
            "max_levels must be at least 1".into(),
        ));
    }
    let strength = graph.in_strength();
    groups_from_values(&strength, max_levels)
}

pub(crate) fn groups_from_values<T: Scalar>(
    values: &[T],
    max_levels: usize,
) -> Result<GroupAssignment> {
    let n = values.len();
    let partition = head_tail_breaks(values, DEFAULT_HEAD_FRACTION_CAP)?;
    let levels: Vec<_> = partition
        .levels
        .iter()
        .filter(|l| !l.head.is_empty())
        .take(max_levels)
        .collect();
    if levels.is_empty() {
        return Ok(GroupAssignment::single(n));
    }
    let depth = levels.len();
    let mut group_of = vec![0; n];
    // Level i (0-based) tail gets id depth - i; the last head keeps 0.
    for (i, level) in levels.iter().enumerate() {
        for &m in &level.tail {
            group_of[m] = depth - i;
        }
    }
    GroupAssignment::new(group_of)
}
