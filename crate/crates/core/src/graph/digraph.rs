use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Transition;
use crate::scalar::Scalar;

/// Weighted directed network with its column-standardized transition matrix.
///
/// Nodes are indexed `0..N` in order of first appearance in the edge list.
/// Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedDigraph<T> {
    node_ids: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize, T)>,
    transition: Transition<T>,
}

/// Builds a graph from `(source, target, weight)` records.
///
/// Repeated `(source, target)` pairs have their weights summed.
pub fn build_graph<T, I, S>(edge_records: I) -> Result<WeightedDigraph<T>>
where
    T: Scalar,
    I: IntoIterator<Item = (S, S, T)>,
    S: AsRef<str>,
{
    let mut node_ids: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize, T)> = Vec::new();
    let mut edge_slot: HashMap<(usize, usize), usize> = HashMap::new();

    let mut intern = |label: &str, node_ids: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(label) {
            return i;
        }
        let i = node_ids.len();
        node_ids.push(label.to_string());
        index.insert(label.to_string(), i);
        i
    };

    for (record, (source, target, weight)) in edge_records.into_iter().enumerate() {
        let (source, target) = (source.as_ref(), target.as_ref());
        if source.is_empty() || target.is_empty() {
            return Err(Error::EmptyLabel { record });
        }
        if weight.is_nan() || weight < T::zero() || weight.is_infinite() {
            return Err(Error::NegativeWeight {
                record,
                source_id: source.to_string(),
                target_id: target.to_string(),
                weight: weight.as_f64(),
            });
        }
        let s = intern(source, &mut node_ids);
        let t = intern(target, &mut node_ids);
        match edge_slot.get(&(s, t)) {
            Some(&slot) => edges[slot].2 = edges[slot].2 + weight,
            None => {
                edge_slot.insert((s, t), edges.len());
                edges.push((s, t, weight));
            }
        }
    }
    if edges.is_empty() {
        return Err(Error::EmptyEdgeList);
    }
    let index = node_ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), i))
        .collect();
    Ok(WeightedDigraph::assemble(node_ids, index, edges))
}

impl<T: Scalar> WeightedDigraph<T> {
    fn assemble(
        node_ids: Vec<String>,
        index: HashMap<String, usize>,
        edges: Vec<(usize, usize, T)>,
    ) -> Self {
        let n = node_ids.len();
        let mut columns = vec![Vec::new(); n];
        for &(s, t, w) in &edges {
            columns[s].push((t, w));
        }
        let transition = Transition::from_weighted_columns(n, columns);
        Self {
            node_ids,
            index,
            edges,
            transition,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_ids.len()
    }

    pub fn node_ids(&self) -> &[String] {
        &self.node_ids
    }

    pub fn node_id(&self, i: usize) -> &str {
        &self.node_ids[i]
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Merged edges `(source, target, weight)` in first-appearance order.
    pub fn edges(&self) -> &[(usize, usize, T)] {
        &self.edges
    }

    pub fn edge_weight(&self, source: usize, target: usize) -> Option<T> {
        self.edges
            .iter()
            .find(|&&(s, t, _)| s == source && t == target)
            .map(|&(_, _, w)| w)
    }

    pub fn transition(&self) -> &Transition<T> {
        &self.transition
    }

    /// Weighted in-degree of every node.
    pub fn in_strength(&self) -> Vec<T> {
        let mut acc = vec![T::zero(); self.node_count()];
        for &(_, t, w) in &self.edges {
            acc[t] = acc[t] + w;
        }
        acc
    }

    pub fn out_strength(&self) -> Vec<T> {
        let mut acc = vec![T::zero(); self.node_count()];
        for &(s, _, w) in &self.edges {
            acc[s] = acc[s] + w;
        }
        acc
    }

    /// Unweighted in-degree (count of distinct predecessors).
    pub fn in_degree(&self) -> Vec<usize> {
        let mut acc = vec![0; self.node_count()];
        for &(_, t, _) in &self.edges {
            acc[t] += 1;
        }
        acc
    }

    pub fn out_degree(&self) -> Vec<usize> {
        let mut acc = vec![0; self.node_count()];
        for &(s, _, _) in &self.edges {
            acc[s] += 1;
        }
        acc
    }

    /// Out-neighbor lists, sorted by node index.
    pub fn out_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(s, t, _) in &self.edges {
            adj[s].push(t);
        }
        adj.iter_mut().for_each(|a| a.sort_unstable());
        adj
    }

    /// Undirected, unweighted projection without self-loops; neighbor lists
    /// sorted and deduplicated.
    pub fn undirected_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count()];
        for &(s, t, _) in &self.edges {
            if s != t {
                adj[s].push(t);
                adj[t].push(s);
            }
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        adj
    }

    /// Resolves external ids, collecting every unknown id before failing.
    pub fn resolve_ids<'a, I>(&self, ids: I, context: &str) -> Result<Vec<usize>>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut found = Vec::new();
        let mut unknown = Vec::new();
        for id in ids {
            match self.node_index(id) {
                Some(i) => found.push(i),
                None => unknown.push(id.to_string()),
            }
        }
        if unknown.is_empty() {
            Ok(found)
        } else {
            Err(Error::UnknownNodes {
                context: context.to_string(),
                ids: unknown,
            })
        }
    }
}
