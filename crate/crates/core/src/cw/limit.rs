//! The non-Gaussian limit law of N^{1/4}(X̄ - m*) at special points: a
//! quartic-exponential density ∝ exp(H⁗(m*) x⁴/24 + (β̄ p m*^{p-1} + h̄) x),
//! normalized by adaptive quadrature. The untilted case has the closed-form
//! constant 2/Γ(1/4) (-H⁗/24)^{1/4}.

use crate::error::{Error, Result};
use crate::numeric::adaptive_simpson;
use statrs::function::gamma::gamma;

const QUAD_TOL: f64 = 1e-12;
const CDF_GRID: usize = 8192;

/// Normalized quartic-exponential limit density.
#[derive(Debug, Clone)]
pub struct SpecialLimit {
    quartic: f64,
    tilt: f64,
    normalizer: f64,
    half_width: f64,
    cdf_xs: Vec<f64>,
    cdf_vals: Vec<f64>,
}

impl SpecialLimit {
    /// Build the limit density for fourth derivative `h4 < 0` at the
    /// maximizer `m_star` under the N^{-3/4}-scale parameter perturbation
    /// (β̄, h̄).
    pub fn new(p: u32, beta_bar: f64, h_bar: f64, m_star: f64, h4: f64) -> Result<Self> {
        if !(h4 < 0.0) {
            return Err(Error::domain("need H⁗(m*) < 0 for a normalizable limit"));
        }
        let quartic = h4 / 24.0;
        let tilt = beta_bar * p as f64 * m_star.powi(p as i32 - 1) + h_bar;

        // Integration window: beyond |x| = L the kernel is below e^{-60}.
        let c = -quartic;
        let mut half_width = (60.0 / c).powf(0.25) + 1.0;
        for _ in 0..6 {
            half_width = ((60.0 + tilt.abs() * half_width) / c).powf(0.25);
        }
        half_width += 1.0;

        let kernel = move |x: f64| (quartic * x.powi(4) + tilt * x).exp();
        let mass = adaptive_simpson(&kernel, -half_width, half_width, QUAD_TOL);
        let normalizer = 1.0 / mass;

        // Cumulative table for CDF evaluation (composite Simpson).
        let m = CDF_GRID;
        let step = 2.0 * half_width / m as f64;
        let mut cdf_xs = Vec::with_capacity(m + 1);
        let mut cdf_vals = Vec::with_capacity(m + 1);
        let mut acc = 0.0;
        cdf_xs.push(-half_width);
        cdf_vals.push(0.0);
        for i in 0..m {
            let a = -half_width + i as f64 * step;
            let b = a + step;
            let mid = 0.5 * (a + b);
            acc += step / 6.0 * (kernel(a) + 4.0 * kernel(mid) + kernel(b));
            cdf_xs.push(b);
            cdf_vals.push((acc * normalizer).min(1.0));
        }
        if let Some(last) = cdf_vals.last_mut() {
            *last = 1.0;
        }
        Ok(SpecialLimit {
            quartic,
            tilt,
            normalizer,
            half_width,
            cdf_xs,
            cdf_vals,
        })
    }

    pub fn density(&self, x: f64) -> f64 {
        self.normalizer * (self.quartic * x.powi(4) + self.tilt * x).exp()
    }

    /// The quadrature normalizing constant (prefactor of the kernel).
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// Closed-form constant of the untilted case, 2/Γ(1/4) (-H⁗/24)^{1/4}.
    pub fn closed_form_normalizer(h4: f64) -> f64 {
        2.0 / gamma(0.25) * (-h4 / 24.0).powf(0.25)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= -self.half_width {
            return 0.0;
        }
        if x >= self.half_width {
            return 1.0;
        }
        let idx = self.cdf_xs.partition_point(|&t| t <= x);
        let (x0, x1) = (self.cdf_xs[idx - 1], self.cdf_xs[idx]);
        let (y0, y1) = (self.cdf_vals[idx - 1], self.cdf_vals[idx]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn mean(&self) -> f64 {
        let f = |x: f64| x * self.density(x);
        adaptive_simpson(&f, -self.half_width, self.half_width, QUAD_TOL)
    }
}
