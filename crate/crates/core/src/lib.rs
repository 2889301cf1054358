//! Token graphs (k-particle graphs) of small simple graphs: construction as
//! induced subgraphs of Johnson graphs, exact structural checks against
//! brute-force oracles, and the exclusion-process chain on configurations.

pub mod algo;
pub mod certificate;
pub mod chain;
pub mod cli;
pub mod combinatorics;
pub mod corpus;
pub mod error;
pub mod flow;
pub mod graph;
pub mod kpg;
pub mod marked;
pub mod analysis;
pub mod special_cases;
pub mod verify;
pub mod scalar;

pub use chain::{ExactMatrix, FloatMatrix, StochasticMatrix};
pub use certificate::{BipartiteBoundary, BoundaryCertificate};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use kpg::{Config, TokenGraph};
pub use scalar::Scalar;
