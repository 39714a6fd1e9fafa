use crate::error::Result;
use crate::graph::{Transition, WeightedDigraph};
use crate::rankers::pagerank::check_damping;
use crate::rankers::{fixed_point_rank, IterOptions, RankVector, TeleportVector};
use crate::scalar::Scalar;

/// Weighted PageRank transition: column `v` splits over its out-neighbors
/// `F_v` in proportion to `(I_u / Σ_{F_v} I)·(O_u / Σ_{F_v} O)`, where `I`
/// and `O` are unweighted in- and out-degrees.
///
/// If either degree sum over `F_v` is zero the column splits uniformly over
/// `F_v`. Nodes without out-edges keep the uniform dangling column.
pub fn wpr_transition<T: Scalar>(graph: &WeightedDigraph<T>) -> Transition<T> {
    let n = graph.node_count();
    let in_deg = graph.in_degree();
    let out_deg = graph.out_degree();
    let columns = graph
        .out_neighbors()
        .into_iter()
        .map(|targets| {
            let sum_in: usize = targets.iter().map(|&u| in_deg[u]).sum();
            let sum_out: usize = targets.iter().map(|&u| out_deg[u]).sum();
            if sum_in == 0 || sum_out == 0 {
                return targets.into_iter().map(|u| (u, T::one())).collect();
            }
            let (si, so) = (T::from_usize_lossy(sum_in), T::from_usize_lossy(sum_out));
            targets
                .into_iter()
                .map(|u| {
                    let w = (T::from_usize_lossy(in_deg[u]) / si)
                        * (T::from_usize_lossy(out_deg[u]) / so);
                    (u, w)
                })
                .collect()
        })
        .collect();
    Transition::from_weighted_columns(n, columns)
}

pub fn weighted_pagerank<T: Scalar>(graph: &WeightedDigraph<T>, d: T) -> Result<RankVector<T>> {
    weighted_pagerank_with(graph, d, IterOptions::default())
}

pub fn weighted_pagerank_with<T: Scalar>(
    graph: &WeightedDigraph<T>,
    d: T,
    opts: IterOptions<T>,
) -> Result<RankVector<T>> {
    check_damping(d)?;
    let n = graph.node_count();
    fixed_point_rank(
        &wpr_transition(graph),
        &TeleportVector::uniform(n),
        &vec![d; n],
        opts,
    )
}
