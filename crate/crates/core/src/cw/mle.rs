//! Marginal maximum-likelihood estimation in the Curie-Weiss model. The ML
//! equations match a moment of X̄ to its observed value; both maps are
//! strictly increasing (in h for u_{N,1}, in β for u_{N,p}), so monotone
//! bisection on an expanding bracket is exact. Confidence regions follow
//! the plug-in normal intervals at regular points, unioned with the finite
//! critical set so they stay valid at every parameter point.

use crate::cw::curve::{critical_beta_set, critical_field_set};
use crate::cw::exact::{moment_with, CwLattice};
use crate::error::{Error, Result};
use crate::numeric::normal_quantile;
use crate::report::{ConfidenceRegion, EstimateReport};

const RESIDUAL_TOL: f64 = 1e-10;
const BRACKET_START: f64 = 50.0;
const MAX_EXPANSIONS: u32 = 16;

/// Monotone bisection for `target` under the increasing map `u`, expanding
/// the bracket by doubling until it straddles the target. Returns None when
/// the target is outside the closure of the range (non-existence).
fn solve_increasing(
    u: impl Fn(f64) -> f64,
    target: f64,
) -> Option<(f64, usize, f64)> {
    let mut lo = -BRACKET_START;
    let mut hi = BRACKET_START;
    let mut expansions = 0;
    while u(lo) > target {
        lo *= 2.0;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return None;
        }
    }
    expansions = 0;
    while u(hi) < target {
        hi *= 2.0;
        expansions += 1;
        if expansions > MAX_EXPANSIONS {
            return None;
        }
    }
    let mut iterations = 0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        iterations += 1;
        if u(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 * hi.abs().max(1.0) {
            break;
        }
    }
    let root = 0.5 * (lo + hi);
    let residual = (u(root) - target).abs();
    Some((root, iterations, residual))
}

/// ML estimate of h with β known: solves u_{N,1}(β, ĥ, p) = x̄.
/// Exists in ℝ iff |x̄| < 1; the boundary cases report ±inf.
pub fn mle_h(beta: f64, p: u32, n: usize, xbar_obs: f64) -> Result<EstimateReport> {
    if xbar_obs.abs() > 1.0 {
        return Err(Error::domain("observed mean outside [-1, 1]"));
    }
    if xbar_obs.abs() == 1.0 {
        return Ok(EstimateReport::sentinel(xbar_obs.signum() * f64::INFINITY));
    }
    let lattice = CwLattice::new(n);
    let u = |h: f64| moment_with(&lattice, beta, h, p, 1);
    let (root, iterations, residual) =
        solve_increasing(u, xbar_obs).ok_or_else(|| Error::solver("mle_h bracket failed"))?;
    debug_assert!(residual < RESIDUAL_TOL);
    Ok(EstimateReport {
        estimate: root,
        std_error: None,
        ci: None,
        iterations,
        residual,
    })
}

/// ML estimate of β with h known: solves u_{N,p}(β̂, h, p) = x̄^p.
/// For odd p a finite root exists iff |x̄| < 1; for even p additionally
/// x̄ ≠ 0 (the even-p map is bounded below by the |X̄|-minimum, so x̄ = 0
/// escapes to -inf and |x̄| = 1 to +inf).
pub fn mle_beta(h: f64, p: u32, n: usize, xbar_obs: f64) -> Result<EstimateReport> {
    if xbar_obs.abs() > 1.0 {
        return Err(Error::domain("observed mean outside [-1, 1]"));
    }
    let target = xbar_obs.powi(p as i32);
    if xbar_obs.abs() == 1.0 {
        let sign = if p % 2 == 1 { xbar_obs.signum() } else { 1.0 };
        return Ok(EstimateReport::sentinel(sign * f64::INFINITY));
    }
    if p % 2 == 0 && xbar_obs == 0.0 {
        return Ok(EstimateReport::sentinel(f64::NEG_INFINITY));
    }
    let lattice = CwLattice::new(n);
    let u = |beta: f64| moment_with(&lattice, beta, h, p, p);
    match solve_increasing(u, target) {
        Some((root, iterations, residual)) => Ok(EstimateReport {
            estimate: root,
            std_error: None,
            ci: None,
            iterations,
            residual,
        }),
        // Target below the attainable range: the likelihood increases
        // toward -inf (even p with |x̄^p| below the support minimum).
        None => Ok(EstimateReport::sentinel(if u(-BRACKET_START) > target {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        })),
    }
}

fn curvature(beta: f64, p: u32, x: f64) -> f64 {
    beta * (p as f64) * (p as f64 - 1.0) * x.powi(p as i32 - 2) - 1.0 / (1.0 - x * x)
}

/// Confidence region for h at known β: the plug-in normal interval
/// ĥ ∓ z √(-H''(x̄)/N) around the ML estimate, unioned with the critical
/// field set S_p(β). Degenerates (zero-width, flagged) when the observed
/// curvature is not negative.
pub fn confidence_interval_h(
    beta: f64,
    p: u32,
    n: usize,
    xbar_obs: f64,
    h_hat: f64,
    level: f64,
) -> Result<ConfidenceRegion> {
    if !(0.0..1.0).contains(&level) || level == 0.0 {
        return Err(Error::domain("level must be in (0, 1)"));
    }
    if xbar_obs.abs() >= 1.0 {
        return Err(Error::domain("observed mean must be interior"));
    }
    if !h_hat.is_finite() {
        return Err(Error::domain("non-finite point estimate"));
    }
    let critical_points = critical_field_set(p, beta)?;
    let h2 = curvature(beta, p, xbar_obs);
    if h2 >= 0.0 {
        return Ok(ConfidenceRegion {
            lo: h_hat,
            hi: h_hat,
            critical_points,
            degenerate: true,
            level,
        });
    }
    let z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    let w = (-h2 / n as f64).sqrt() * z;
    Ok(ConfidenceRegion {
        lo: h_hat - w,
        hi: h_hat + w,
        critical_points,
        degenerate: false,
        level,
    })
}

/// Confidence region for β at known h ≠ 0: β̂ ∓ (x̄^{1-p}/p) z √(-H''(x̄)/N)
/// unioned with the critical set T_p(h). Requires x̄ ≠ 0.
pub fn confidence_interval_beta(
    h: f64,
    p: u32,
    n: usize,
    xbar_obs: f64,
    beta_hat: f64,
    level: f64,
) -> Result<ConfidenceRegion> {
    if !(0.0..1.0).contains(&level) || level == 0.0 {
        return Err(Error::domain("level must be in (0, 1)"));
    }
    if h == 0.0 {
        return Err(Error::domain("beta interval requires h != 0"));
    }
    if xbar_obs == 0.0 {
        return Err(Error::domain("beta interval undefined at x̄ = 0"));
    }
    if xbar_obs.abs() >= 1.0 {
        return Err(Error::domain("observed mean must be interior"));
    }
    if !beta_hat.is_finite() {
        return Err(Error::domain("non-finite point estimate"));
    }
    let critical_points = critical_beta_set(p, h)?;
    let h2 = curvature(beta_hat, p, xbar_obs);
    if h2 >= 0.0 {
        return Ok(ConfidenceRegion {
            lo: beta_hat,
            hi: beta_hat,
            critical_points,
            degenerate: true,
            level,
        });
    }
    let z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    let w = xbar_obs.powi(1 - p as i32).abs() / p as f64 * (-h2 / n as f64).sqrt() * z;
    Ok(ConfidenceRegion {
        lo: beta_hat - w,
        hi: beta_hat + w,
        critical_points,
        degenerate: false,
        level,
    })
}
