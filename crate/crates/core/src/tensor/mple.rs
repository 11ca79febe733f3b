//! Maximum pseudolikelihood estimation. The stationarity condition
//! H(x) = Σ_i m_i(x) tanh(p b m_i(x)) has a nondecreasing right side that
//! runs from 0 to Σ_i |m_i|, so the estimate is located by monotone
//! bisection; targets outside that range encode non-existence as the
//! infimum-over-empty-set sentinel +inf.

use crate::error::{Error, Result};
use crate::numeric::normal_quantile;
use crate::report::EstimateReport;
use crate::tensor::model::Model;
use crate::tensor::sparse::SpinVector;

pub const DEFAULT_BRACKET_MAX: f64 = 50.0;

/// MPLE of the inverse temperature from a single sample.
pub fn mple(model: &Model, x: &SpinVector, bracket_max: f64) -> Result<EstimateReport> {
    let p = model.order() as f64;
    let ham = model.hamiltonian(x)?;
    let fields = model.local_fields(x)?;
    let rhs = |b: f64| -> f64 {
        fields
            .iter()
            .map(|&m| m * (p * b * m).tanh())
            .sum::<f64>()
    };
    let saturation: f64 = fields.iter().map(|&m| m.abs()).sum();

    if ham < 0.0 {
        // RHS ≥ 0 on b ≥ 0, so the solution set is empty.
        return Ok(EstimateReport::sentinel(f64::INFINITY));
    }
    if ham == 0.0 {
        return Ok(EstimateReport {
            estimate: 0.0,
            std_error: None,
            ci: None,
            iterations: 0,
            residual: 0.0,
        });
    }
    if ham >= saturation {
        return Ok(EstimateReport::sentinel(f64::INFINITY));
    }

    let mut hi = bracket_max.max(1.0);
    let mut expansions = 0;
    while rhs(hi) < ham {
        hi *= 2.0;
        expansions += 1;
        if expansions > 60 {
            return Ok(EstimateReport::sentinel(f64::INFINITY));
        }
    }
    let mut lo = 0.0f64;
    let mut iterations = 0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        iterations += 1;
        if rhs(mid) < ham {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi.max(1.0) {
            break;
        }
    }
    let estimate = 0.5 * (lo + hi);
    Ok(EstimateReport {
        estimate,
        std_error: None,
        ci: None,
        iterations,
        residual: (rhs(estimate) - ham).abs(),
    })
}

/// Closed-form Curie-Weiss MPLE map φ_p: the estimate is φ_p(x̄); infinite
/// for odd p on negative means, zero at x̄ = 0.
pub fn phi_p(p: u32, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    if p % 2 == 1 && t < 0.0 {
        return f64::INFINITY;
    }
    t.atanh() / (p as f64 * t.powi(p as i32 - 1))
}

/// Plug-in asymptotic standard error and CI for the Curie-Weiss MPLE above
/// the estimation threshold: SE = (|x̄|^{1-p}/p) √(-g''(|x̄|)/N) with
/// g(t) = β t^p - I(t) evaluated at β = φ_p(x̄).
pub fn mple_cw_ci(p: u32, xbar_obs: f64, n: usize, level: f64) -> Result<EstimateReport> {
    if xbar_obs == 0.0 || xbar_obs.abs() >= 1.0 {
        return Err(Error::domain("need |x̄| in (0, 1) for the CW MPLE CI"));
    }
    if !(0.0..1.0).contains(&level) || level == 0.0 {
        return Err(Error::domain("level must be in (0, 1)"));
    }
    let estimate = phi_p(p, xbar_obs);
    if !estimate.is_finite() {
        return Ok(EstimateReport::sentinel(estimate));
    }
    let t = xbar_obs.abs();
    let pf = p as f64;
    let g2 = estimate * pf * (pf - 1.0) * t.powi(p as i32 - 2) - 1.0 / (1.0 - t * t);
    if g2 >= 0.0 {
        return Ok(EstimateReport {
            estimate,
            std_error: None,
            ci: None,
            iterations: 0,
            residual: 0.0,
        });
    }
    let se = t.powi(1 - p as i32) / pf * (-g2 / n as f64).sqrt();
    let z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    Ok(EstimateReport {
        estimate,
        std_error: Some(se),
        ci: Some((estimate - z * se, estimate + z * se)),
        iterations: 0,
        residual: 0.0,
    })
}
