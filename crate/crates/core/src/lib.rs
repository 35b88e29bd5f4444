//! Dense simplicial complexes and their limit objects.
//!
//! Finite complexes live in [`simplicial`]; complexons (stacks of symmetric
//! kernels, one per dimension) in [`complexon`]. Densities, cut norms and
//! random sampling build on both.

pub mod complexon;
pub mod cut;
pub mod error;
pub mod homomorphism;
pub mod rational;
pub mod rng;
pub mod sampling;
pub mod simplicial;

pub use complexon::{CechCurveComplexon, Complexon, HomogeneousComplexon, Kernel, Partition, StepComplexon, WeightSequence};
pub use error::{Error, Result};
pub use rational::Rational;
pub use simplicial::{enumerate_complexes, simplex, Hypergraph, Simplex, SimplicialComplex, WeightedComplex};
