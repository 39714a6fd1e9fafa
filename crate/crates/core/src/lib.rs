//! Node-influence ranking with group-local damping and attribute-derived
//! teleportation, plus baseline rankers, evolutionary calibration against
//! labeled nodes, and evaluation protocols.
//!
//! The graph and ranking code is generic over [`Scalar`] (`f32` or `f64`);
//! the aliases below fix the precision used by calibration and evaluation.

pub mod calibration;
pub mod error;
pub mod evaluation;
pub mod graph;
pub mod rankers;
pub mod scalar;
pub mod seed;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type WeightedDigraph64 = graph::WeightedDigraph<f64>;
pub type WeightedDigraph32 = graph::WeightedDigraph<f32>;
pub type AttributeMatrix64 = graph::AttributeMatrix<f64>;
pub type AttributeMatrix32 = graph::AttributeMatrix<f32>;
pub type HnrParams64 = rankers::HnrParams<f64>;
pub type HnrParams32 = rankers::HnrParams<f32>;
pub type RankVector64 = rankers::RankVector<f64>;
pub type RankVector32 = rankers::RankVector<f32>;
pub type TeleportVector64 = rankers::TeleportVector<f64>;
pub type IterOptions64 = rankers::IterOptions<f64>;
