//! Exact computations and asymptotic inference for the p-tensor Curie-Weiss
//! model: linear-time partition function and magnetization law, maximizer
//! classification of the parameter space, thresholds and special points,
//! marginal ML estimation with confidence regions, and the special-point
//! limit density.

mod classify;
mod curve;
mod exact;
mod hfun;
mod limit;
mod mle;

pub use classify::{
    beta_tilde, classify_point, mixture_weights, special_point, Maximizer, PointClass, PointKind,
    DEFAULT_TOL_F, DEFAULT_TOL_X, SPECIAL_CURVATURE_TOL,
};
pub use curve::{critical_beta_set, critical_field, critical_field_set, CURVE_TOL};
pub use exact::{
    log_partition, magnetization_pmf, moment, moment_with, sample_magnetization, CwExact,
    CwLattice, CwSpec, MagSupport,
};
pub use hfun::{binary_entropy, HFunction};
pub use limit::SpecialLimit;
pub use mle::{confidence_interval_beta, confidence_interval_h, mle_beta, mle_h};

/// H and derivatives at a point; thin wrapper kept for call sites that want
/// the (function, point, order) form.
pub fn h_eval(hf: &HFunction, x: f64, order: u32) -> crate::error::Result<f64> {
    hf.eval(x, order)
}
