//! Random model generators and phase-transition threshold solvers.

mod gen;
mod threshold;

pub use gen::{gen_hsbm, gen_partite, gen_sk, triangle_tensor, HsbmSpec};
pub use threshold::{
    cw_threshold_table, phi_eval, phi_grad, threshold_equipartite, threshold_hsbm,
    threshold_partite, ThresholdResult,
};
