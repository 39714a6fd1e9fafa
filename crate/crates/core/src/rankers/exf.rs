use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::scalar::Scalar;

/// Cluster out-degrees for every ordered two-transmission sequence from `seed`
/// on an undirected simple graph given as sorted neighbor lists.
///
/// First event infects a neighbor `a` of `seed`; the second infects any
/// `b ∉ {seed, a}` adjacent to `seed` or `a`. Each ordered pair `(a, b)` is
/// one sequence and contributes the number of edges leaving `{seed, a, b}`.
pub fn cluster_degrees(adj: &[Vec<usize>], seed: usize) -> Vec<usize> {
    let mut degrees = Vec::new();
    let mut candidates: Vec<usize> = Vec::new();
    for &a in &adj[seed] {
        candidates.clear();
        candidates.extend(
            adj[seed]
                .iter()
                .chain(&adj[a])
                .copied()
                .filter(|&b| b != seed && b != a),
        );
        candidates.sort_unstable();
        candidates.dedup();
        for &b in &candidates {
            let cluster = [seed, a, b];
            let outgoing: usize = cluster
                .iter()
                .map(|&c| adj[c].iter().filter(|x| !cluster.contains(x)).count())
                .sum();
            degrees.push(outgoing);
        }
    }
    degrees
}

/// Shannon entropy (natural log) of the normalized cluster degrees.
///
/// A single sequence is a certain outcome with entropy 0 even when its
/// cluster has no outgoing edges; several sequences that all have degree 0
/// leave the distribution undefined.
fn entropy<T: Scalar>(degrees: &[usize]) -> Option<T> {
    match degrees.len() {
        0 => return None,
        1 => return Some(T::zero()),
        _ => {}
    }
    let total: usize = degrees.iter().sum();
    if total == 0 {
        return None;
    }
    let total = T::from_usize_lossy(total);
    let h = degrees
        .iter()
        .filter(|&&d| d > 0)
        .map(|&d| {
            let p = T::from_usize_lossy(d) / total;
            p * p.ln()
        })
        .fold(T::zero(), |acc, x| acc + x);
    Some(-h)
}

/// Expected Force of `seed_node` on the undirected, unweighted projection.
pub fn expected_force<T: Scalar>(graph: &WeightedDigraph<T>, seed_node: usize) -> Result<T> {
    if seed_node >= graph.node_count() {
        return Err(Error::InvalidParameter(format!(
            "node {seed_node} out of range"
        )));
    }
    let adj = graph.undirected_neighbors();
    expected_force_on(&adj, seed_node)
}

fn expected_force_on<T: Scalar>(adj: &[Vec<usize>], seed: usize) -> Result<T> {
    let degrees = cluster_degrees(adj, seed);
    entropy(&degrees).ok_or(Error::InsufficientNeighborhood { node: seed })
}

/// Expected Force of every node; `None` where the neighborhood is too small.
pub fn expected_force_all<T: Scalar>(graph: &WeightedDigraph<T>) -> Vec<Option<T>> {
    let adj = graph.undirected_neighbors();
    (0..graph.node_count())
        .map(|i| expected_force_on(&adj, i).ok())
        .collect()
}
