use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::rankers::params::DAMPING_CAP;
use crate::rankers::{fixed_point_rank, IterOptions, RankVector, TeleportVector};
use crate::scalar::Scalar;

pub const DEFAULT_DAMPING: f64 = 0.85;

pub(crate) fn check_damping<T: Scalar>(d: T) -> Result<()> {
    if d >= T::zero() && d <= T::lit(DAMPING_CAP) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "damping {d} outside [0, {DAMPING_CAP}]"
        )))
    }
}

/// Classic PageRank on the weighted transition matrix with uniform teleport.
pub fn pagerank<T: Scalar>(graph: &WeightedDigraph<T>, d: T) -> Result<RankVector<T>> {
    pagerank_with(graph, d, IterOptions::default())
}

pub fn pagerank_with<T: Scalar>(
    graph: &WeightedDigraph<T>,
    d: T,
    opts: IterOptions<T>,
) -> Result<RankVector<T>> {
    check_damping(d)?;
    let n = graph.node_count();
    fixed_point_rank(
        graph.transition(),
        &TeleportVector::uniform(n),
        &vec![d; n],
        opts,
    )
}
