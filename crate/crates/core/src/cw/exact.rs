//! Exact linear-time computations for the p-tensor Curie-Weiss model: the
//! log-partition function, the magnetization pmf, its moments, and exact
//! inverse-CDF sampling. Everything runs in the log domain so system sizes
//! up to 1e5 stay in range.

use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::{compensated_sum, ln_binomial, log_sum_exp};
use crate::rng::rng_from_seed;

/// Parameter point (β, h, p, N) of the Curie-Weiss model. The Hamiltonian
/// follows the all-tuples convention N·x̄^p (diagonal index tuples included).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CwSpec {
    pub beta: f64,
    pub h: f64,
    pub p: u32,
    pub n: usize,
}

impl CwSpec {
    pub fn new(beta: f64, h: f64, p: u32, n: usize) -> Result<Self> {
        if !(beta >= 0.0) || !h.is_finite() {
            return Err(Error::domain("need beta >= 0 and finite h"));
        }
        if p < 2 {
            return Err(Error::domain("interaction order p must be at least 2"));
        }
        if n < 1 {
            return Err(Error::domain("system size n must be at least 1"));
        }
        Ok(CwSpec { beta, h, p, n })
    }
}

/// Support of the sample mean: the n+1 equally spaced points
/// {-1, -1+2/n, ..., 1}, exactly symmetric about zero.
#[derive(Debug, Clone)]
pub struct MagSupport {
    values: Vec<f64>,
}

impl MagSupport {
    pub fn new(n: usize) -> Self {
        let values = (0..=n)
            .map(|k| (2.0 * k as f64 - n as f64) / n as f64)
            .collect();
        MagSupport { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Parameter-independent tables for system size n: the magnetization
/// support and the log-binomial coefficients. Sharing one lattice across
/// many (β, h) evaluations keeps ML root-finding linear in n per step.
#[derive(Debug, Clone)]
pub struct CwLattice {
    support: MagSupport,
    ln_binom: Vec<f64>,
}

impl CwLattice {
    pub fn new(n: usize) -> Self {
        CwLattice {
            support: MagSupport::new(n),
            ln_binom: (0..=n)
                .map(|k| ln_binomial(n as u64, k as u64))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.support.len() - 1
    }

    pub fn support(&self) -> &MagSupport {
        &self.support
    }

    fn log_weights(&self, beta: f64, h: f64, p: u32) -> Vec<f64> {
        let nf = self.n() as f64;
        self.support
            .values()
            .iter()
            .zip(&self.ln_binom)
            .map(|(&m, &lb)| lb + nf * (beta * m.powi(p as i32) + h * m))
            .collect()
    }
}

/// u_{N,r}(β, h, p) = E[X̄^r] over a shared lattice; the hot path of the
/// ML equation solvers.
pub fn moment_with(lattice: &CwLattice, beta: f64, h: f64, p: u32, r: u32) -> f64 {
    let lw = lattice.log_weights(beta, h, p);
    let lse = log_sum_exp(&lw);
    compensated_sum(
        lattice
            .support
            .values()
            .iter()
            .zip(&lw)
            .map(|(&m, &w)| m.powi(r as i32) * (w - lse).exp()),
    )
}

/// Cached exact-computation tables for one parameter point: support,
/// normalized pmf, and the log-partition value.
#[derive(Debug, Clone)]
pub struct CwExact {
    spec: CwSpec,
    support: MagSupport,
    pmf: Vec<f64>,
    log_partition: f64,
    cdf: Vec<f64>,
}

impl CwExact {
    pub fn new(spec: CwSpec) -> Self {
        Self::with_lattice(&CwLattice::new(spec.n), spec)
    }

    pub fn with_lattice(lattice: &CwLattice, spec: CwSpec) -> Self {
        assert_eq!(lattice.n(), spec.n, "lattice size mismatch");
        let nf = spec.n as f64;
        let support = lattice.support.clone();
        let log_weights = lattice.log_weights(spec.beta, spec.h, spec.p);
        let lse = log_sum_exp(&log_weights);
        let pmf: Vec<f64> = log_weights.iter().map(|&lw| (lw - lse).exp()).collect();
        let mut cdf = Vec::with_capacity(pmf.len());
        let mut acc = 0.0;
        for &p in &pmf {
            acc += p;
            cdf.push(acc);
        }
        if let Some(last) = cdf.last_mut() {
            *last = 1.0;
        }
        CwExact {
            spec,
            support,
            pmf,
            log_partition: lse - nf * std::f64::consts::LN_2,
            cdf,
        }
    }

    pub fn spec(&self) -> &CwSpec {
        &self.spec
    }

    pub fn support(&self) -> &MagSupport {
        &self.support
    }

    /// log Z_N(β, h, p) with the 2^{-N} normalization of the model.
    pub fn log_partition(&self) -> f64 {
        self.log_partition
    }

    /// P(X̄ = m) over the support, in support order.
    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    /// u_{N,r} = E[X̄^r].
    pub fn moment(&self, r: u32) -> f64 {
        compensated_sum(
            self.support
                .values()
                .iter()
                .zip(&self.pmf)
                .map(|(&m, &p)| m.powi(r as i32) * p),
        )
    }

    /// i.i.d. inverse-CDF draws of the magnetization; deterministic per seed.
    pub fn sample(&self, count: usize, seed: u64) -> Vec<f64> {
        let mut rng = rng_from_seed(seed);
        (0..count)
            .map(|_| {
                let u: f64 = rng.random();
                let idx = self.cdf.partition_point(|&c| c <= u);
                self.support.values()[idx.min(self.support.len() - 1)]
            })
            .collect()
    }
}

/// log Z_N(β, h, p); O(N) in the system size.
pub fn log_partition(spec: &CwSpec) -> f64 {
    CwExact::new(*spec).log_partition()
}

/// Magnetization pmf as (support value, probability) pairs.
pub fn magnetization_pmf(spec: &CwSpec) -> Vec<(f64, f64)> {
    let exact = CwExact::new(*spec);
    exact
        .support()
        .values()
        .iter()
        .cloned()
        .zip(exact.pmf().iter().cloned())
        .collect()
}

/// r-th moment of the sample mean, u_{N,r}(β, h, p) = E[X̄^r].
pub fn moment(spec: &CwSpec, r: u32) -> f64 {
    assert!(r >= 1, "moment order must be >= 1");
    CwExact::new(*spec).moment(r)
}

/// Exact magnetization draws; deterministic per seed.
pub fn sample_magnetization(spec: &CwSpec, count: usize, seed: u64) -> Vec<f64> {
    assert!(count >= 1);
    CwExact::new(*spec).sample(count, seed)
}
