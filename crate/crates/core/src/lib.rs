//! Quasi-randomness certificates for oriented graphs.

pub mod census;
pub mod certify;
pub mod discrepancy;
pub mod error;
pub mod generators;
pub mod graph;
pub mod rational;
pub mod rng;
pub mod spectral;
pub mod verdict;

pub use error::{Error, Result};
pub use graph::{EdgeState, PartiallyOrientedGraph, VertexSubsetPair};
pub use rational::Rational;
