//! General p-tensor Ising models on weighted hypergraphs: sparse symmetric
//! tensors, Hamiltonians and local fields, Gibbs sampling, pseudolikelihood
//! estimation and spectral diagnostics.

mod gibbs;
mod model;
mod mple;
mod norms;
mod sparse;

pub use gibbs::{gibbs_sweep, GibbsChain};
pub use model::{DenseCw, Model};
pub use mple::{mple, mple_cw_ci, phi_p, DEFAULT_BRACKET_MAX};
pub use norms::{codegree_norm, local_interaction_norm, power_iteration_norm};
pub use sparse::{Hyperedge, SparseTensor, SpinVector};
