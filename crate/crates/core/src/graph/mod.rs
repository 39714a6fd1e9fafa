//! Network construction, attribute standardization, node grouping and labels.

mod attributes;
mod digraph;
pub(crate) mod groups;
pub mod io;
mod labels;
mod transition;

pub use attributes::{standardize_attributes, AttributeMatrix};
pub use digraph::{build_graph, WeightedDigraph};
pub use groups::{assign_groups_default, GroupAssignment};
pub use labels::{LabelSample, LabelSet};
pub use transition::Transition;
