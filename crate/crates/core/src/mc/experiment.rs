//! Replicated sampling-distribution and coverage experiments for the
//! Curie-Weiss estimators. Replication r draws its magnetization from the
//! exact pmf under the split seed stream fan_out(seed, r), so results are
//! bit-identical under any thread count.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cw::{
    classify_point, confidence_interval_beta, confidence_interval_h, mle_beta, mle_h, CwExact,
    CwSpec, PointKind, SpecialLimit, DEFAULT_TOL_F, DEFAULT_TOL_X,
};
use crate::error::{Error, Result};
use crate::mc::histogram::HistogramReport;
use crate::rng::{fan_out, rng_from_seed};
use crate::tensor::phi_p;

/// What to compute from each replicated draw of X̄.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Estimand {
    /// The sample mean itself.
    SampleMean,
    /// Curie-Weiss MPLE φ_p(X̄).
    MpleBeta,
    /// ML estimate of β at known h.
    MleBeta,
    /// ML estimate of h at known β.
    MleH,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentSpec {
    pub beta: f64,
    pub h: f64,
    pub p: u32,
    pub n: usize,
    pub estimand: Estimand,
    pub replications: usize,
    /// Exponent a in N^a (estimate - center); 0 leaves raw values.
    pub scaling_exponent: f64,
    /// Centering; None picks the natural center (truth for estimators,
    /// the top maximizer of H for the sample mean).
    pub center: Option<f64>,
    pub seed: u64,
    pub bins: usize,
}

impl ExperimentSpec {
    fn cw_spec(&self) -> Result<CwSpec> {
        CwSpec::new(self.beta, self.h, self.p, self.n)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SamplingReport {
    pub histogram: HistogramReport,
    pub center: f64,
    pub scaling_exponent: f64,
    /// Classification kind code of the parameter point (0 regular,
    /// 1 special, 2 weakly critical, 3 strongly critical).
    pub point_kind: u8,
    pub maximizers: Vec<f64>,
    pub mixture_weights: Vec<f64>,
}

pub fn kind_code(kind: PointKind) -> u8 {
    match kind {
        PointKind::Regular => 0,
        PointKind::Special => 1,
        PointKind::WeaklyCritical => 2,
        PointKind::StronglyCritical => 3,
    }
}

/// One exact-pmf draw per replication under the split seed stream.
fn replicate_draws(exact: &CwExact, replications: usize, seed: u64) -> Vec<f64> {
    (0..replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_from_seed(fan_out(seed, r as u64));
            let u: f64 = rng.random();
            let values = exact.support().values();
            let mut acc = 0.0;
            let mut pick = values[values.len() - 1];
            for (&m, &p) in values.iter().zip(exact.pmf()) {
                acc += p;
                if u < acc {
                    pick = m;
                    break;
                }
            }
            pick
        })
        .collect()
}

fn apply_estimand(spec: &ExperimentSpec, xbar: f64) -> f64 {
    match spec.estimand {
        Estimand::SampleMean => xbar,
        Estimand::MpleBeta => phi_p(spec.p, xbar),
        Estimand::MleBeta => mle_beta(spec.h, spec.p, spec.n, xbar)
            .map_or(f64::NAN, |r| r.estimate),
        Estimand::MleH => mle_h(spec.beta, spec.p, spec.n, xbar).map_or(f64::NAN, |r| r.estimate),
    }
}

/// Replicate {simulate → estimate → scale-and-center} and histogram the
/// results, attaching the theoretical reference density when the point
/// class admits one.
pub fn run_sampling_distribution(spec: &ExperimentSpec) -> Result<SamplingReport> {
    if spec.replications < 1 {
        return Err(Error::domain("need at least one replication"));
    }
    let cw = spec.cw_spec()?;
    let exact = CwExact::new(cw);
    let class = classify_point(spec.beta, spec.h, spec.p, DEFAULT_TOL_X, DEFAULT_TOL_F)?;
    let top = class
        .maximizers
        .iter()
        .max_by(|a, b| a.location.partial_cmp(&b.location).unwrap())
        .expect("at least one maximizer");

    let center = spec.center.unwrap_or(match spec.estimand {
        Estimand::SampleMean => top.location,
        Estimand::MpleBeta | Estimand::MleBeta => spec.beta,
        Estimand::MleH => spec.h,
    });
    let scale = (spec.n as f64).powf(spec.scaling_exponent);

    let draws = replicate_draws(&exact, spec.replications, spec.seed);
    let values: Vec<f64> = draws
        .into_par_iter()
        .map(|xbar| {
            let est = apply_estimand(spec, xbar);
            if est.is_finite() {
                scale * (est - center)
            } else {
                est
            }
        })
        .collect();

    let mut histogram = HistogramReport::from_samples(&values, spec.bins);
    attach_reference(&mut histogram, spec, &class, top.location, top.h2);

    Ok(SamplingReport {
        histogram,
        center,
        scaling_exponent: spec.scaling_exponent,
        point_kind: kind_code(class.kind),
        maximizers: class.locations(),
        mixture_weights: class.weights.clone(),
    })
}

fn attach_reference(
    histogram: &mut HistogramReport,
    spec: &ExperimentSpec,
    class: &crate::cw::PointClass,
    m_star: f64,
    h2: f64,
) {
    let pf = spec.p as f64;
    let variance = match (spec.estimand, class.kind) {
        (Estimand::SampleMean, PointKind::Regular) => Some(-1.0 / h2),
        (Estimand::MleH, PointKind::Regular) => Some(-h2),
        (Estimand::MleBeta, PointKind::Regular) | (Estimand::MpleBeta, PointKind::Regular)
            if m_star != 0.0 =>
        {
            Some(-h2 / (pf * pf * m_star.powi(2 * spec.p as i32 - 2)))
        }
        // Symmetric supercritical pair: the MPLE is asymptotically normal
        // with the same variance formula at ±m*.
        (Estimand::MpleBeta, PointKind::WeaklyCritical) if class.maximizers.len() == 2 => {
            let locs = class.locations();
            if (locs[0] + locs[1]).abs() < 1e-8 {
                Some(-h2 / (pf * pf * m_star.powi(2 * spec.p as i32 - 2)))
            } else {
                None
            }
        }
        _ => None,
    };
    if let Some(v) = variance {
        let norm = 1.0 / (2.0 * std::f64::consts::PI * v).sqrt();
        histogram.attach_ref_density(move |x| norm * (-x * x / (2.0 * v)).exp());
        return;
    }
    if spec.estimand == Estimand::SampleMean && class.kind == PointKind::Special {
        let f = crate::cw::HFunction::new(spec.beta, spec.h, spec.p).expect("valid parameters");
        if let Ok(h4) = f.eval(m_star, 4) {
            if let Ok(lim) = SpecialLimit::new(spec.p, 0.0, 0.0, m_star, h4) {
                histogram.attach_ref_density(move |x| lim.density(x));
            }
        }
    }
}

/// Which parameter the coverage experiment targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CoverageTarget {
    Field,
    Beta,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageRecord {
    pub estimate: f64,
    pub lo: f64,
    pub hi: f64,
    pub covered: bool,
    pub degenerate: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub coverage: f64,
    pub level: f64,
    pub target: CoverageTarget,
    pub records: Vec<CoverageRecord>,
}

/// Fraction of replications whose confidence region contains the truth.
pub fn run_coverage(
    spec: &ExperimentSpec,
    target: CoverageTarget,
    level: f64,
) -> Result<CoverageReport> {
    let cw = spec.cw_spec()?;
    let exact = CwExact::new(cw);
    let draws = replicate_draws(&exact, spec.replications, spec.seed);
    let records: Vec<CoverageRecord> = draws
        .into_par_iter()
        .map(|xbar| {
            let fallback = CoverageRecord {
                estimate: f64::NAN,
                lo: f64::NAN,
                hi: f64::NAN,
                covered: false,
                degenerate: true,
            };
            match target {
                CoverageTarget::Field => {
                    let Ok(fit) = mle_h(spec.beta, spec.p, spec.n, xbar) else {
                        return fallback;
                    };
                    if !fit.is_finite() {
                        return fallback;
                    }
                    match confidence_interval_h(
                        spec.beta,
                        spec.p,
                        spec.n,
                        xbar,
                        fit.estimate,
                        level,
                    ) {
                        Ok(region) => CoverageRecord {
                            estimate: fit.estimate,
                            lo: region.lo,
                            hi: region.hi,
                            covered: region.contains(spec.h),
                            degenerate: region.degenerate,
                        },
                        Err(_) => fallback,
                    }
                }
                CoverageTarget::Beta => {
                    let Ok(fit) = mle_beta(spec.h, spec.p, spec.n, xbar) else {
                        return fallback;
                    };
                    if !fit.is_finite() {
                        return fallback;
                    }
                    match confidence_interval_beta(
                        spec.h,
                        spec.p,
                        spec.n,
                        xbar,
                        fit.estimate,
                        level,
                    ) {
                        Ok(region) => CoverageRecord {
                            estimate: fit.estimate,
                            lo: region.lo,
                            hi: region.hi,
                            covered: region.contains(spec.beta),
                            degenerate: region.degenerate,
                        },
                        Err(_) => fallback,
                    }
                }
            }
        })
        .collect();
    let covered = records.iter().filter(|r| r.covered).count();
    Ok(CoverageReport {
        coverage: covered as f64 / records.len() as f64,
        level,
        target,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_spec() -> ExperimentSpec {
        ExperimentSpec {
            beta: 0.2,
            h: 0.1,
            p: 4,
            n: 500,
            estimand: Estimand::SampleMean,
            replications: 400,
            scaling_exponent: 0.5,
            center: None,
            seed: 11,
            bins: 30,
        }
    }

    #[test]
    fn sampling_distribution_is_deterministic() {
        let spec = base_spec();
        let a = run_sampling_distribution(&spec).unwrap();
        let b = run_sampling_distribution(&spec).unwrap();
        assert_eq!(a.histogram.counts, b.histogram.counts);
        assert_eq!(a.histogram.mean, b.histogram.mean);
    }

    #[test]
    fn regular_point_gets_normal_reference() {
        let rep = run_sampling_distribution(&base_spec()).unwrap();
        assert_eq!(rep.point_kind, 0);
        assert!(rep.histogram.ref_density.is_some());
    }

    #[test]
    fn sentinel_estimates_bucketed_not_dropped() {
        // Odd p with mass on negative means: φ₃ hits +inf.
        let spec = ExperimentSpec {
            beta: 0.1,
            h: 0.0,
            p: 3,
            n: 100,
            estimand: Estimand::MpleBeta,
            replications: 200,
            scaling_exponent: 0.0,
            center: Some(0.0),
            seed: 3,
            bins: 20,
        };
        let rep = run_sampling_distribution(&spec).unwrap();
        let total: u64 = rep.histogram.counts.iter().sum();
        assert_eq!(total + rep.histogram.non_finite, 200);
        assert!(rep.histogram.non_finite > 0);
    }

    #[test]
    fn degenerate_level_one_coverage() {
        let mut spec = base_spec();
        spec.replications = 50;
        spec.n = 400;
        let rep = run_coverage(&spec, CoverageTarget::Field, 0.999999).unwrap();
        assert!(rep.coverage > 0.99);
    }
}
