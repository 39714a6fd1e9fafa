//! Fixed-point ranking engine and the ranking algorithms built on it.

mod attrirank;
mod exf;
mod fixed_point;
mod hnr;
mod pagerank;
mod params;
mod vector;
mod wpr;

pub use attrirank::{
    attrirank, attrirank_with_dampings, sample_dampings, similarity_transition,
    structural_transition, AttriRankConfig, DEFAULT_DAMPING_SAMPLES,
};
pub use exf::{cluster_degrees, expected_force, expected_force_all};
pub use fixed_point::{fixed_point_rank, IterOptions, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use hnr::{hnr_rank, teleport_from_attributes};
pub use pagerank::{pagerank, pagerank_with, DEFAULT_DAMPING};
pub use params::{Combination, HnrParams, DAMPING_CAP};
pub use vector::{ordinal_ranks, RankVector, TeleportVector};
pub use wpr::{weighted_pagerank, weighted_pagerank_with, wpr_transition};
