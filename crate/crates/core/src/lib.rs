//! Statistical inference for p-tensor Ising models on weighted hypergraphs:
//! exact Curie-Weiss computations, pseudolikelihood estimation, phase
//! transition thresholds, penalized estimation with node covariates, and a
//! reproducible Monte-Carlo experiment harness.
//!
//! All types are immutable after construction and all operations are pure
//! given their inputs and an explicit seed, so everything here is safe to
//! call from many threads at once.

pub mod covariate;
pub mod cw;
pub mod error;
pub mod mc;
pub mod models;
pub mod numeric;
pub mod report;
pub mod rng;
pub mod tensor;

pub use error::{Error, Result};
pub use report::{ConfidenceRegion, EstimateReport};
