//! Discrete strong and weak Fréchet distance between walks in weighted
//! graphs under the shortest-path metric.
//!
//! The crate provides exact engines, a one-pass `(κ+1)`-approximate decision
//! procedure for κ-straight paths, a `(1+ε)`-approximate decision built on
//! path compression and graph Voronoi diagrams, and generators for
//! Orthogonal-Vectors hardness instances.
//!
//! Indices into walks and free-space matrices are 0-based throughout.

pub mod eps;
pub mod error;
pub mod exact;
pub mod fsm;
pub mod graph;
pub mod instances;
pub mod io;
pub mod kappa;
pub mod oracle;
pub mod ovh;
mod search;
pub mod verdict;
pub mod weight;

pub use error::FrechetError;
pub use graph::{Graph, GraphBuilder, GraphError, VertexId, VoronoiDiagram, Walk};
pub use oracle::{DistanceOracle, ExactOracle, LandmarkOracle};
pub use verdict::{ApproxInterval, DecisionStats, Verdict, VerdictAtRho};
pub use weight::{Scalar, Weight};
