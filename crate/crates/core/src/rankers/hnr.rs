use crate::error::{Error, Result};
use crate::graph::{AttributeMatrix, GroupAssignment, WeightedDigraph};
use crate::rankers::{fixed_point_rank, HnrParams, IterOptions, RankVector, TeleportVector};
use crate::scalar::Scalar;

/// Teleport mass from the group's linear attribute combination,
/// `raw(u) = Σ_j a(g(u))_j · x_j(u)`, normalized to sum one.
pub fn teleport_from_attributes<T: Scalar>(
    attrs: &AttributeMatrix<T>,
    groups: &GroupAssignment,
    params: &HnrParams<T>,
) -> Result<TeleportVector<T>> {
    params.check_compatible(attrs, groups)?;
    let raw = (0..attrs.rows())
        .map(|u| {
            let weights = &params.attr_weights()[groups.group_of(u)];
            weights.iter().zip(attrs.row(u)).map(|(&a, &x)| a * x).sum()
        })
        .collect();
    TeleportVector::from_mass(raw)
}

/// Hetero-NodeRank: group-local damping with attribute-derived teleport.
pub fn hnr_rank<T: Scalar>(
    graph: &WeightedDigraph<T>,
    attrs: &AttributeMatrix<T>,
    groups: &GroupAssignment,
    params: &HnrParams<T>,
    opts: IterOptions<T>,
) -> Result<RankVector<T>> {
    if graph.node_count() != groups.node_count() {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} nodes, grouping covers {}",
            graph.node_count(),
            groups.node_count()
        )));
    }
    let teleport = teleport_from_attributes(attrs, groups, params)?;
    let damping = params.damping_per_node(groups);
    fixed_point_rank(graph.transition(), &teleport, &damping, opts)
}
