//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured quantities. Run with
//! `cargo test -p tensor-ising --test acceptance -- --nocapture`.

use std::time::Instant;

use tensor_ising::covariate::{
    assumption_report, fit_penalized, gibbs_covariate_run, grad_neg_log_pl, neg_log_pl,
    CovariateModel,
};
use tensor_ising::cw::{
    classify_point, log_partition, magnetization_pmf, moment, CwExact, CwSpec, HFunction,
    PointKind, SpecialLimit,
};
use tensor_ising::mc::{
    gof_test, run_coverage, CoverageTarget, Estimand, ExperimentSpec, GofOptions, GofVerdict,
    phase_diagram, run_sampling_distribution,
};
use tensor_ising::models::{cw_threshold_table, threshold_equipartite, threshold_hsbm, HsbmSpec};
use tensor_ising::numeric::{bisect_root, compensated_sum, ks_distance, log_sum_exp};
use tensor_ising::rng::{fan_out, rng_from_seed};
use tensor_ising::tensor::{
    mple, phi_p, DenseCw, GibbsChain, Model, SparseTensor, SpinVector, DEFAULT_BRACKET_MAX,
};

use rand::Rng;

/// Full 2^n enumeration of the Curie-Weiss model: log-partition, pmf over
/// the magnetization support, and moments, all independent of the O(n)
/// implementation path.
struct EnumOracle {
    log_partition: f64,
    pmf: Vec<f64>,
}

impl EnumOracle {
    fn new(spec: &CwSpec) -> Self {
        let n = spec.n;
        let nf = n as f64;
        let mut logs = Vec::with_capacity(1 << n);
        let mut ks = Vec::with_capacity(1 << n);
        for bits in 0u64..1 << n {
            let ones = bits.count_ones() as usize;
            let m = (2.0 * ones as f64 - nf) / nf;
            logs.push(nf * (spec.beta * m.powi(spec.p as i32) + spec.h * m));
            ks.push(ones);
        }
        let shift = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> = logs.iter().map(|&l| (l - shift).exp()).collect();
        let total = compensated_sum(weights.iter().cloned());
        let mut pmf = vec![0.0; n + 1];
        for (w, &k) in weights.iter().zip(&ks) {
            pmf[k] += w / total;
        }
        EnumOracle {
            log_partition: log_sum_exp(&logs) - nf * std::f64::consts::LN_2,
            pmf,
        }
    }

    fn moment(&self, spec: &CwSpec, r: u32) -> f64 {
        let nf = spec.n as f64;
        compensated_sum(self.pmf.iter().enumerate().map(|(k, &p)| {
            let m = (2.0 * k as f64 - nf) / nf;
            m.powi(r as i32) * p
        }))
    }
}

#[test]
fn acceptance_01_exact_engine_oracle_equivalence() {
    let start = Instant::now();
    let mut rng = rng_from_seed(0xACCE_0001);
    let mut worst_z = 0.0f64;
    let mut worst_pmf = 0.0f64;
    let mut worst_mom = 0.0f64;
    for _ in 0..200 {
        let beta = rng.random::<f64>() * 1.5;
        let h = rng.random::<f64>() * 2.0 - 1.0;
        let p = 2 + (rng.random::<u32>() % 4);
        let n = 1 + (rng.random::<u32>() % 12) as usize;
        let spec = CwSpec::new(beta, h, p, n).unwrap();
        let oracle = EnumOracle::new(&spec);

        let z_err = (log_partition(&spec) - oracle.log_partition).abs()
            / oracle.log_partition.abs().max(1.0);
        worst_z = worst_z.max(z_err);

        let pmf = magnetization_pmf(&spec);
        for (k, &(_, prob)) in pmf.iter().enumerate() {
            worst_pmf = worst_pmf.max((prob - oracle.pmf[k]).abs());
        }

        for r in [1u32, p] {
            let err = (moment(&spec, r) - oracle.moment(&spec, r)).abs();
            worst_mom = worst_mom.max(err);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(worst_z <= 1e-12, "log-partition relative error {worst_z:.2e}");
    assert!(worst_pmf <= 1e-12, "pmf error {worst_pmf:.2e}");
    assert!(worst_mom <= 1e-12, "moment error {worst_mom:.2e}");
    assert!(elapsed < 30.0, "took {elapsed:.1}s (limit 30s)");
    println!(
        "ACCEPTANCE 01 exact-engine oracle equivalence: PASS \
         (z {worst_z:.1e}, pmf {worst_pmf:.1e}, moments {worst_mom:.1e}, {elapsed:.1}s)"
    );
}

#[test]
fn acceptance_02_threshold_values() {
    let start = Instant::now();
    let er = |p: u32| {
        threshold_hsbm(&HsbmSpec::erdos_renyi(p, 1.0).unwrap(), 1e-6)
            .unwrap()
            .beta_star
    };
    let b2 = er(2);
    let b3 = er(3);
    let b4 = er(4);
    assert!((b2 - 0.5).abs() <= 1e-4, "beta*(2,1) = {b2}");
    assert!((b3 - 0.672).abs() <= 0.002, "beta*(3,1) = {b3}");
    assert!((b4 - 0.689).abs() <= 0.002, "beta*(4,1) = {b4}");
    let table = cw_threshold_table(8, 1e-6).unwrap();
    for w in table.windows(2) {
        assert!(w[0].1 < w[1].1, "not strictly increasing at p = {}", w[1].0);
    }
    for &(p, b) in &table {
        assert!(b < std::f64::consts::LN_2, "beta*({p}) = {b} >= ln 2");
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 10.0, "took {elapsed:.1}s (limit 10s)");
    println!(
        "ACCEPTANCE 02 threshold values: PASS \
         (0.5={b2:.5}, 0.672={b3:.4}, 0.689={b4:.4}, increasing to p=8, {elapsed:.1}s)"
    );
}

#[test]
fn acceptance_03_scaling_identities() {
    let tol = 1e-6;
    let er = |p: u32, theta: f64| {
        threshold_hsbm(&HsbmSpec::erdos_renyi(p, theta).unwrap(), tol)
            .unwrap()
            .beta_star
    };
    let base = er(3, 1.0);
    for theta in [0.25, 0.5] {
        let scaled = er(3, theta) * theta;
        assert!(
            (scaled - base).abs() <= 2.0 * tol / theta,
            "theta {theta}: {scaled} vs {base}"
        );
    }
    for p in [2u32, 3] {
        let eq = threshold_equipartite(p, 1.0, tol).unwrap();
        let expect = (p as f64).powi(p as i32) * er(p, 1.0);
        let rel = (eq - expect).abs() / expect;
        assert!(rel <= 0.005, "p={p}: equipartite {eq} vs p^p ER {expect}");
    }
    println!("ACCEPTANCE 03 scaling identities: PASS");
}

#[test]
fn acceptance_04_mple_closed_form() {
    let mut rng = rng_from_seed(0xACCE_0004);
    let n = 64;
    for p in [2u32, 3, 4] {
        let model = Model::Cw(DenseCw::new(p, n).unwrap());
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let x = SpinVector::random(n, &mut rng);
            let fit = mple(&model, &x, DEFAULT_BRACKET_MAX).unwrap();
            let expect = phi_p(p, x.mean());
            if expect.is_finite() {
                worst = worst.max((fit.estimate - expect).abs());
            } else {
                assert!(!fit.is_finite(), "p={p}, x̄={}", x.mean());
            }
        }
        assert!(worst <= 1e-10, "p={p}: worst deviation {worst:.2e}");
    }
    println!("ACCEPTANCE 04 MPLE closed form: PASS (1e-10 over 1000 draws, p=2,3,4)");
}

#[test]
fn acceptance_05_mple_clt_desk_scale() {
    let start = Instant::now();
    let p = 4u32;
    let beta = 0.75;
    let n = 2000;
    let spec = ExperimentSpec {
        beta,
        h: 0.0,
        p,
        n,
        estimand: Estimand::MpleBeta,
        replications: 1000,
        scaling_exponent: 0.5,
        center: None,
        seed: 0xACCE_0005,
        bins: 40,
    };
    let report = run_sampling_distribution(&spec).unwrap();
    let hist = &report.histogram;
    // At this desk scale the all-up configuration still carries ~5e-3
    // probability; those draws map to the +inf MPLE sentinel and land in
    // the non-finite bucket rather than being dropped.
    let bucket = hist.non_finite as f64 / hist.replications as f64;
    assert!(bucket < 0.01, "non-finite fraction {bucket}");

    // -g''(m*)/(p² m*^{2p-2}) at the positive maximizer of g (the largest
    // root of g'; the bracket [0.9, 1) straddles only that one)
    let f = HFunction::new(beta, 0.0, p).unwrap();
    let m_star = bisect_root(|t| f.d1(t), 0.9, 1.0 - 1e-9, 1e-14);
    let pf = p as f64;
    let g2 = beta * pf * (pf - 1.0) * m_star.powi(p as i32 - 2) - 1.0 / (1.0 - m_star * m_star);
    let target = -g2 / (pf * pf * m_star.powi(2 * p as i32 - 2));
    let variance = hist.sd * hist.sd;
    let rel = (variance - target).abs() / target;
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < 300.0, "took {elapsed:.1}s (limit 5min)");

    // Exact finite-size law of the statistic, for context in the failure
    // message: the estimator map has curvature ~1/(1-m*)² at m* = 0.9945,
    // and at n = 2000 the magnetization spread (sd 0.0025) probes it.
    let exact = exact_mple_moments(beta, p, n);
    println!(
        "ACCEPTANCE 05 MPLE CLT at desk scale: sampled var {variance:.3} \
         / skew {:.3}; exact n=2000 var {:.3} / skew {:.3}; target var {target:.3}",
        hist.skewness, exact.0, exact.1
    );
    assert!(
        rel <= 0.20,
        "variance {variance:.3} vs asymptotic {target:.3} ({:+.0}%): the exact \
         finite-size variance at n = 2000 is {:.3} ({:+.0}%), so no seed can pass; \
         the maximizer m* = {m_star:.4} leaves the estimator strongly nonlinear \
         over the magnetization spread at this system size",
        100.0 * rel,
        exact.0,
        100.0 * (exact.0 - target) / target
    );
    assert!(
        hist.skewness.abs() < 0.15,
        "skewness {:.3}: the exact finite-size skewness at n = 2000 is {:.3} \
         (and still 0.31 at n = 20000), so this diagnostic cannot pass here",
        hist.skewness,
        exact.1
    );
    println!("ACCEPTANCE 05 MPLE CLT at desk scale: PASS ({elapsed:.1}s)");
}

/// Exact (pmf-weighted) variance and skewness of √N(φ_p(X̄) - β) over the
/// finite-sentinel part of the magnetization law.
fn exact_mple_moments(beta: f64, p: u32, n: usize) -> (f64, f64) {
    let spec = CwSpec::new(beta, 0.0, p, n).unwrap();
    let e = CwExact::new(spec);
    let scale = (n as f64).sqrt();
    let (mut mass, mut m1, mut m2, mut m3) = (0.0, 0.0, 0.0, 0.0);
    for (&m, &pr) in e.support().values().iter().zip(e.pmf()) {
        let est = phi_p(p, m);
        if !est.is_finite() {
            continue;
        }
        let v = scale * (est - beta);
        mass += pr;
        m1 += pr * v;
        m2 += pr * v * v;
        m3 += pr * v * v * v;
    }
    m1 /= mass;
    m2 /= mass;
    m3 /= mass;
    let var = m2 - m1 * m1;
    let skew = (m3 - 3.0 * m1 * m2 + 2.0 * m1.powi(3)) / var.powf(1.5);
    (var, skew)
}

#[test]
fn acceptance_06_special_point_limit() {
    let (beta, h, p, n) = (0.3333, 0.40997, 4u32, 2000);
    // The limit law is anchored at the special point itself: maximizer
    // m* = sqrt(1 - 2/p) and fourth derivative there (the quoted digits
    // round the special coordinates to 5 decimals).
    let (beta_check, h_check) = tensor_ising::cw::special_point(p).unwrap();
    let class = classify_point(beta_check, h_check, p, 1e-6, 1e-9).unwrap();
    assert_eq!(class.kind, PointKind::Special);
    let m_star = class.maximizers[0].location;
    let f = HFunction::new(beta_check, h_check, p).unwrap();
    let h4 = f.eval(m_star, 4).unwrap();
    let limit = SpecialLimit::new(p, 0.0, 0.0, m_star, h4).unwrap();

    let spec = CwSpec::new(beta, h, p, n).unwrap();
    let draws = CwExact::new(spec).sample(2000, 0xACCE_0006);
    let scale = (n as f64).powf(0.25);
    let scaled: Vec<f64> = draws.iter().map(|&x| scale * (x - m_star)).collect();
    let ks = ks_distance(&scaled, |x| limit.cdf(x));
    assert!(ks < 0.08, "KS distance {ks}");
    println!("ACCEPTANCE 06 special-point non-Gaussian limit: PASS (KS {ks:.3})");
}

/// Segment draws by the midpoints between maximizers; per-segment masses
/// and conditional means estimate the mixture weights and mode locations.
fn mode_masses(draws: &[f64], locations: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let k = locations.len();
    let mut bounds = Vec::with_capacity(k + 1);
    bounds.push(f64::NEG_INFINITY);
    for w in locations.windows(2) {
        bounds.push(0.5 * (w[0] + w[1]));
    }
    bounds.push(f64::INFINITY);
    let mut masses = vec![0.0; k];
    let mut means = vec![0.0; k];
    for &d in draws {
        let seg = bounds.partition_point(|&b| b <= d) - 1;
        masses[seg] += 1.0;
        means[seg] += d;
    }
    for i in 0..k {
        if masses[i] > 0.0 {
            means[i] /= masses[i];
        }
        masses[i] /= draws.len() as f64;
    }
    (masses, means)
}

#[test]
fn acceptance_07_critical_multimodality() {
    let n = 2000;
    let reps = 2000;

    // The quoted weakly critical exemplar (0.57, 0.12159) reproduces the
    // located critical field to its printed precision, and its histogram
    // is bimodal.
    let h_star = tensor_ising::cw::critical_field(4, 0.57, 1e-10)
        .unwrap()
        .expect("critical field exists at beta = 0.57");
    assert!(
        (h_star - 0.12159).abs() < 5e-4,
        "phi_4(0.57) = {h_star} vs quoted 0.12159"
    );
    let class_quoted = classify_point(0.57, 0.12159, 4, 1e-6, 1e-3).unwrap();
    assert_eq!(class_quoted.maximizers.len(), 2, "expected two maximizers");
    let spec_quoted = CwSpec::new(0.57, 0.12159, 4, n).unwrap();
    let draws_quoted = CwExact::new(spec_quoted).sample(reps, 0xACCE_0027);
    let (masses_quoted, _) = mode_masses(&draws_quoted, &class_quoted.locations());
    assert!(
        masses_quoted.iter().all(|&m| m > 0.05),
        "not bimodal at the quoted digits: {masses_quoted:?}"
    );

    // Mixture weights are compared on the curve itself: five printed
    // decimals leave an O(1e-4) field offset which the factor N = 2000
    // turns into a visible tilt of the mode masses.
    let class = classify_point(0.57, h_star, 4, 1e-6, 1e-6).unwrap();
    assert_eq!(class.maximizers.len(), 2, "expected two maximizers");
    let spec = CwSpec::new(0.57, h_star, 4, n).unwrap();
    let draws = CwExact::new(spec).sample(reps, 0xACCE_0007);
    let locs = class.locations();
    let (masses, means) = mode_masses(&draws, &locs);
    assert!(masses.iter().all(|&m| m > 0.05), "not bimodal: {masses:?}");
    for (k, (&loc, &mode)) in locs.iter().zip(&means).enumerate() {
        assert!((mode - loc).abs() <= 0.02, "mode {k}: {mode} vs {loc}");
        assert!(
            (masses[k] - class.weights[k]).abs() <= 0.05,
            "mass {k}: {} vs weight {}",
            masses[k],
            class.weights[k]
        );
    }

    // Trimodal strongly critical point at the computed threshold.
    let beta_tilde = tensor_ising::cw::beta_tilde(4, 1e-9);
    let class3 = classify_point(beta_tilde, 0.0, 4, 1e-6, 1e-5).unwrap();
    assert_eq!(class3.kind, PointKind::StronglyCritical);
    let spec3 = CwSpec::new(beta_tilde, 0.0, 4, n).unwrap();
    let draws3 = CwExact::new(spec3).sample(reps, 0xACCE_0017);
    let locs3 = class3.locations();
    let (masses3, means3) = mode_masses(&draws3, &locs3);
    assert!(masses3.iter().all(|&m| m > 0.05), "not trimodal: {masses3:?}");
    for (k, (&loc, &mode)) in locs3.iter().zip(&means3).enumerate() {
        assert!((mode - loc).abs() <= 0.02, "mode {k}: {mode} vs {loc}");
        assert!(
            (masses3[k] - class3.weights[k]).abs() <= 0.05,
            "mass {k}: {} vs weight {}",
            masses3[k],
            class3.weights[k]
        );
    }
    println!(
        "ACCEPTANCE 07 critical multimodality: PASS \
         (bimodal {masses:?}, trimodal {masses3:?})"
    );
}

#[test]
fn acceptance_08_ci_coverage() {
    let spec = ExperimentSpec {
        beta: 0.5,
        h: 0.2,
        p: 3,
        n: 5000,
        estimand: Estimand::SampleMean,
        replications: 300,
        scaling_exponent: 0.0,
        center: None,
        seed: 0xACCE_0008,
        bins: 10,
    };
    let field = run_coverage(&spec, CoverageTarget::Field, 0.95).unwrap();
    assert!(
        (0.92..=0.98).contains(&field.coverage),
        "h coverage {}",
        field.coverage
    );
    let beta = run_coverage(&spec, CoverageTarget::Beta, 0.95).unwrap();
    assert!(
        (0.92..=0.98).contains(&beta.coverage),
        "beta coverage {}",
        beta.coverage
    );
    println!(
        "ACCEPTANCE 08 CI coverage: PASS (h {:.3}, beta {:.3})",
        field.coverage, beta.coverage
    );
}

fn ring_network(n: usize, weight: f64) -> Vec<(usize, usize, f64)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for d in [1usize, 2] {
            let j = (i + d) % n;
            let (a, b) = (i.min(j), i.max(j));
            edges.push((a, b, weight));
        }
    }
    edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    edges.dedup_by(|a, b| (a.0, a.1) == (b.0, b.1));
    edges
}

#[test]
fn acceptance_09_penalized_estimator() {
    // (a) gradient vs finite differences
    let mut rng = rng_from_seed(0xACCE_0009);
    let n0 = 60;
    let d0 = 8;
    let z0: Vec<f64> = (0..n0 * d0).map(|_| rng.random::<f64>() * 2.0 - 1.0).collect();
    let m0 = CovariateModel::new(n0, &ring_network(n0, 0.25), z0, 0.2, vec![0.0; d0]).unwrap();
    let x0 = SpinVector::random(n0, &mut rng);
    let gamma: Vec<f64> = (0..d0 + 1).map(|_| rng.random::<f64>() - 0.5).collect();
    let grad = grad_neg_log_pl(&m0, &x0, &gamma).unwrap();
    let mut worst_fd = 0.0f64;
    for j in 0..d0 + 1 {
        let step = 1e-6;
        let mut gp = gamma.clone();
        let mut gm = gamma.clone();
        gp[j] += step;
        gm[j] -= step;
        let fd = (neg_log_pl(&m0, &x0, &gp).unwrap() - neg_log_pl(&m0, &x0, &gm).unwrap())
            / (2.0 * step);
        worst_fd = worst_fd.max((fd - grad[j]).abs() / grad[j].abs().max(1.0));
    }
    assert!(worst_fd < 1e-5, "gradient FD error {worst_fd:.2e}");

    // (b, c) sparse recovery across n: median L2 error strictly decreasing
    let d = 50;
    let s_support = [1usize, 17, 42]; // theta support (plus beta itself)
    let reps = 50;
    let mut medians = Vec::new();
    let mut worst_kkt = 0.0f64;
    for (ni, &n) in [500usize, 1000, 2000].iter().enumerate() {
        let mut errors: Vec<f64> = Vec::with_capacity(reps);
        for rep in 0..reps {
            let seed = fan_out(0x5EED_0009 + ni as u64, rep as u64);
            let mut rng = rng_from_seed(seed);
            let z: Vec<f64> = (0..n * d)
                .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect();
            let mut theta = vec![0.0; d];
            for &j in &s_support {
                theta[j] = 0.5;
            }
            let truth_beta = 0.2;
            let model =
                CovariateModel::new(n, &ring_network(n, 0.25), z, truth_beta, theta.clone())
                    .unwrap();
            let x0 = SpinVector::random(n, &mut rng);
            let x = gibbs_covariate_run(&model, x0, 300, &mut rng).unwrap();
            let fit = fit_penalized(&model, &x, 1.0, 20_000, 1e-6).unwrap();
            worst_kkt = worst_kkt.max(fit.kkt_residual);
            let mut err = (fit.gamma_hat[0] - truth_beta).powi(2);
            for j in 0..d {
                err += (fit.gamma_hat[1 + j] - theta[j]).powi(2);
            }
            errors.push(err.sqrt());
        }
        errors.sort_by(|a, b| a.partial_cmp(b).unwrap());
        medians.push(0.5 * (errors[reps / 2 - 1] + errors[reps / 2]));
    }
    assert!(worst_kkt < 1e-5, "KKT residual {worst_kkt:.2e}");
    assert!(
        medians[0] > medians[1] && medians[1] > medians[2],
        "medians not decreasing: {medians:?}"
    );

    // Assumption diagnostics hold for this design
    let mut rng = rng_from_seed(1);
    let z: Vec<f64> = (0..500 * d)
        .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
        .collect();
    let m = CovariateModel::new(500, &ring_network(500, 0.25), z, 0.2, vec![0.0; d]).unwrap();
    let rep = assumption_report(&m);
    assert!(rep.bounded_row_norm && rep.beta_below_quarter && rep.design_nondegenerate);

    println!(
        "ACCEPTANCE 09 penalized estimator: PASS \
         (FD {worst_fd:.1e}, KKT {worst_kkt:.1e}, medians {medians:?})"
    );
}

#[test]
fn acceptance_10_gibbs_validity() {
    let n = 8;
    let spec = CwSpec::new(0.4, 0.0, 2, n).unwrap();
    let exact = CwExact::new(spec);
    let model = Model::Cw(DenseCw::new(2, n).unwrap());
    let mut rng = rng_from_seed(0xACCE_0010);
    let mut chain = GibbsChain::new(&model, 0.4, None, SpinVector::all_up(n)).unwrap();
    chain.run(5000, &mut rng);
    let samples = 100_000;
    let mut counts = vec![0u64; n + 1];
    for _ in 0..samples {
        chain.run(5, &mut rng);
        let k = ((chain.state().mean() + 1.0) * n as f64 / 2.0).round() as usize;
        counts[k] += 1;
    }
    let tv: f64 = exact
        .pmf()
        .iter()
        .zip(&counts)
        .map(|(&p, &c)| (p - c as f64 / samples as f64).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv < 0.02, "TV distance {tv}");
    println!("ACCEPTANCE 10 Gibbs validity: PASS (TV {tv:.4})");
}

#[test]
fn acceptance_11_gof_calibration() {
    let n = 50;
    let beta0 = 0.4;
    let edges: Vec<(Vec<u32>, f64)> = ring_network(n, 0.5)
        .into_iter()
        .map(|(a, b, w)| (vec![a as u32, b as u32], w))
        .collect();
    let graph = SparseTensor::new(2, n, edges).unwrap();
    let model = Model::Sparse(graph.clone());
    let metas = 100;
    let mut accepts = 0;
    for meta in 0..metas {
        let seed = fan_out(0xACCE_0011, meta as u64);
        let mut rng = rng_from_seed(seed);
        let x0 = SpinVector::random(n, &mut rng);
        let mut chain = GibbsChain::new(&model, beta0, None, x0).unwrap();
        chain.run(800, &mut rng);
        let report = gof_test(
            &graph,
            chain.state(),
            100,
            seed ^ 0xFFFF,
            GofOptions {
                burn_in: 400,
                ..GofOptions::default()
            },
        )
        .unwrap();
        if report.verdict == GofVerdict::Accept {
            accepts += 1;
        }
    }
    let rate = accepts as f64 / metas as f64;
    assert!(
        (0.88..=0.99).contains(&rate),
        "acceptance rate {rate} over {metas} meta-replications"
    );
    println!("ACCEPTANCE 11 GOF calibration: PASS (accept rate {rate:.2})");
}

#[test]
fn acceptance_12_determinism() {
    // Histogram TSV from the sampling-distribution harness
    let spec = ExperimentSpec {
        beta: 0.2,
        h: 0.1,
        p: 4,
        n: 800,
        estimand: Estimand::SampleMean,
        replications: 500,
        scaling_exponent: 0.5,
        center: None,
        seed: 0xACCE_0012,
        bins: 40,
    };
    let a = run_sampling_distribution(&spec).unwrap().histogram.to_tsv();
    let b = run_sampling_distribution(&spec).unwrap().histogram.to_tsv();
    assert_eq!(a, b, "sampling TSV not byte-identical");

    // Phase diagram TSV
    let pa = phase_diagram(4, (0.1, 0.7), (-0.4, 0.4), (8, 9)).unwrap().to_tsv();
    let pb = phase_diagram(4, (0.1, 0.7), (-0.4, 0.4), (8, 9)).unwrap().to_tsv();
    assert_eq!(pa, pb, "phase diagram TSV not byte-identical");

    // Gibbs sampling runs and GOF bands
    let n = 24;
    let edges: Vec<(Vec<u32>, f64)> = ring_network(n, 0.5)
        .into_iter()
        .map(|(a, b, w)| (vec![a as u32, b as u32], w))
        .collect();
    let graph = SparseTensor::new(2, n, edges).unwrap();
    let model = Model::Sparse(graph.clone());
    let run_chain = || {
        let mut rng = rng_from_seed(33);
        let mut chain = GibbsChain::new(&model, 0.3, None, SpinVector::all_up(n)).unwrap();
        let mut lines = String::new();
        for _ in 0..50 {
            chain.run(5, &mut rng);
            lines.push_str(&chain.state().to_line());
            lines.push('\n');
        }
        lines
    };
    assert_eq!(run_chain(), run_chain(), "spin output not byte-identical");

    let mut rng = rng_from_seed(44);
    let x0 = SpinVector::random(n, &mut rng);
    let mut chain = GibbsChain::new(&model, 0.3, None, x0).unwrap();
    chain.run(500, &mut rng);
    let opts = GofOptions {
        burn_in: 200,
        ..GofOptions::default()
    };
    let ga = gof_test(&graph, chain.state(), 40, 7, opts).unwrap();
    let gb = gof_test(&graph, chain.state(), 40, 7, opts).unwrap();
    assert_eq!(ga.simulated, gb.simulated);
    assert_eq!(ga.band, gb.band);

    println!("ACCEPTANCE 12 determinism: PASS (byte-identical reruns)");
}
