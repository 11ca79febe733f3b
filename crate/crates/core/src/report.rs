//! Estimator output records shared across the solver modules.

use serde::Serialize;

/// Point-estimate record. `estimate` may be `±inf`: non-existence of a
/// finite root is a statistical outcome, not an error.
#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub estimate: f64,
    pub std_error: Option<f64>,
    pub ci: Option<(f64, f64)>,
    pub iterations: usize,
    pub residual: f64,
}

impl EstimateReport {
    pub fn sentinel(value: f64) -> Self {
        EstimateReport {
            estimate: value,
            std_error: None,
            ci: None,
            iterations: 0,
            residual: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.estimate.is_finite()
    }
}

/// Confidence region for the Curie-Weiss parameters: a regular interval plus
/// the finite set of critical parameter values at the known nuisance value.
/// The union has the same Lebesgue measure as the interval; membership is
/// checked against both parts.
#[derive(Debug, Clone, Serialize)]
pub struct ConfidenceRegion {
    pub lo: f64,
    pub hi: f64,
    /// Critical/special parameter values unioned into the region.
    pub critical_points: Vec<f64>,
    /// Set when the curvature proxy -H''(x̄) was non-positive and the
    /// interval degenerated to the point estimate.
    pub degenerate: bool,
    pub level: f64,
}

impl ConfidenceRegion {
    /// Membership in the interval-plus-points union. Points are matched to
    /// the accuracy of the curve solver.
    pub fn contains(&self, value: f64) -> bool {
        if value >= self.lo && value <= self.hi {
            return true;
        }
        self.critical_points
            .iter()
            .any(|&c| (c - value).abs() <= 1e-5)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}
