//! Replicated Monte-Carlo experiments: estimator sampling distributions,
//! confidence-interval coverage, phase-diagram grids and the simulation
//! goodness-of-fit test. Replications fan out over split seed streams and
//! aggregate order-independently, so results are reproducible under any
//! thread count.

mod experiment;
mod gof;
mod histogram;
mod phase;

pub use experiment::{
    kind_code, run_coverage, run_sampling_distribution, CoverageRecord, CoverageReport,
    CoverageTarget, Estimand, ExperimentSpec, SamplingReport,
};
pub use gof::{gof_test, GofOptions, GofReport, GofVerdict};
pub use histogram::HistogramReport;
pub use phase::{phase_diagram, PhaseDiagram};
