//! Phase-transition thresholds from the mean-field variational problem:
//! β* is the largest β at which sup_{t∈[0,1]^K} φ_β(t) is still zero, with
//! φ_β(t) = β S(t) - Σ_j λ_j I(t_j). The outer bisection runs on the
//! positivity of the sup; the inner maximization is coordinate-wise grid
//! search with golden-section polish, exploiting that S is a polynomial in
//! each coordinate.

use crate::cw::binary_entropy;
use crate::error::{Error, Result};
use crate::models::gen::HsbmSpec;
use crate::numeric::golden_section_max;

const GRID: usize = 1000; // coordinate grid step 1e-3
const SUP_POSITIVE: f64 = 1e-12;
const MAX_COMMUNITIES: usize = 6;

#[derive(Debug, Clone)]
pub struct ThresholdResult {
    pub beta_star: f64,
    /// Inner maximizer at β* + tol (just above the transition).
    pub argmax_t: Vec<f64>,
    pub tolerance: f64,
}

/// Interaction term S(t) described by its restriction to each coordinate:
/// `slice(j, t)` returns the coefficients c_0..c_d of S as a polynomial in
/// t_j with the other coordinates frozen.
struct Variational<'a> {
    k: usize,
    lambda: &'a [f64],
    slice: Box<dyn Fn(usize, &[f64]) -> Vec<f64> + 'a>,
}

fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Sorted evaluation points on [0, 1]: a uniform grid of step 1/GRID plus
/// a geometric refinement of 1 - u down to 1e-13.
fn coordinate_grid() -> Vec<f64> {
    let mut us: Vec<f64> = (0..=GRID).map(|i| i as f64 / GRID as f64).collect();
    let log_points = 240;
    for i in 0..=log_points {
        let delta = 10f64.powf(-1.0 - 12.0 * i as f64 / log_points as f64);
        us.push(1.0 - delta);
    }
    us.sort_by(|a, b| a.partial_cmp(b).unwrap());
    us.dedup();
    // keep strictly inside for the entropy derivative
    us.iter_mut().for_each(|u| *u = u.min(1.0 - 1e-14));
    us
}

impl Variational<'_> {
    fn interaction(&self, t: &[f64]) -> f64 {
        poly_eval(&(self.slice)(0, t), t[0])
    }

    fn phi(&self, beta: f64, t: &[f64]) -> f64 {
        let entropy: f64 = self
            .lambda
            .iter()
            .zip(t)
            .map(|(&l, &tj)| l * binary_entropy(tj))
            .sum();
        beta * self.interaction(t) - entropy
    }

    /// Coordinate-ascent maximization of φ_β over [0, 1]^K from one start.
    /// The coordinate grid is uniform with step 1e-3 plus a log-spaced
    /// refinement toward u = 1, where the maximizer crowds as the tensor
    /// order grows; the best cell is polished by golden section.
    fn ascend(&self, beta: f64, start: &[f64]) -> (Vec<f64>, f64) {
        let us = coordinate_grid();
        let mut t = start.to_vec();
        let mut best = self.phi(beta, &t);
        for _ in 0..300 {
            for j in 0..self.k {
                let coeffs = (self.slice)(j, &t);
                let lambda_j = self.lambda[j];
                let g = |u: f64| beta * poly_eval(&coeffs, u) - lambda_j * binary_entropy(u);
                let mut gi = 0;
                let mut gv = g(us[0]);
                for (i, &u) in us.iter().enumerate().skip(1) {
                    let v = g(u);
                    if v > gv {
                        gv = v;
                        gi = i;
                    }
                }
                let lo = us[gi.saturating_sub(1)];
                let hi = us[(gi + 1).min(us.len() - 1)];
                let (px, pv) = golden_section_max(g, lo, hi, 1e-15);
                t[j] = if pv > gv { px } else { us[gi] };
            }
            let now = self.phi(beta, &t);
            if now - best <= 1e-15 * best.abs().max(1.0) {
                best = best.max(now);
                break;
            }
            best = now;
        }
        (t, best)
    }

    /// Global inner maximization with a small multistart set.
    fn inner_sup(&self, beta: f64) -> (Vec<f64>, f64) {
        let mut starts = vec![vec![0.5; self.k], vec![0.95; self.k], vec![0.05; self.k]];
        for j in 0..self.k.min(4) {
            let mut s = vec![0.05; self.k];
            s[j] = 0.9;
            starts.push(s);
        }
        let mut best_t = vec![0.0; self.k];
        let mut best_v = 0.0; // φ(0) = 0 is always attainable
        for s in starts {
            let (t, v) = self.ascend(beta, &s);
            if v > best_v {
                best_v = v;
                best_t = t;
            }
        }
        (best_t, best_v)
    }

    fn solve(&self, tol: f64) -> Result<ThresholdResult> {
        if !(tol > 0.0) {
            return Err(Error::domain("tolerance must be positive"));
        }
        let positive = |beta: f64| self.inner_sup(beta).1 > SUP_POSITIVE;
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        let mut expansions = 0;
        while !positive(hi) {
            lo = hi;
            hi *= 2.0;
            expansions += 1;
            if expansions > 40 {
                return Err(Error::solver(
                    "variational problem never turns positive; threshold is infinite",
                ));
            }
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if positive(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let beta_star = 0.5 * (lo + hi);
        let (argmax_t, _) = self.inner_sup(beta_star + tol);
        Ok(ThresholdResult {
            beta_star,
            argmax_t,
            tolerance: tol,
        })
    }
}

fn hsbm_variational(spec: &HsbmSpec) -> Variational<'_> {
    let k = spec.communities();
    let p = spec.order();
    let lambda = spec.lambda();
    let slice = move |j: usize, t: &[f64]| -> Vec<f64> {
        let mut coeffs = vec![0.0; p as usize + 1];
        let mut sig = vec![0usize; p as usize];
        let total = k.pow(p);
        for flat in 0..total {
            let mut rest = flat;
            for pos in (0..p as usize).rev() {
                sig[pos] = rest % k;
                rest /= k;
            }
            let theta = spec.theta_at(&sig);
            if theta == 0.0 {
                continue;
            }
            let mut degree = 0usize;
            let mut weight = theta;
            for &b in &sig {
                if b == j {
                    degree += 1;
                    weight *= lambda[j];
                } else {
                    weight *= lambda[b] * t[b];
                }
            }
            coeffs[degree] += weight;
        }
        coeffs
    };
    Variational {
        k,
        lambda,
        slice: Box::new(slice),
    }
}

/// φ_β(t) = β Σ θ_sig Π λ t - Σ λ_j I(t_j), the mean-field functional of
/// the block model; evaluated by direct summation over all K^p signatures.
pub fn phi_eval(spec: &HsbmSpec, beta: f64, t: &[f64]) -> Result<f64> {
    let k = spec.communities();
    let p = spec.order();
    if t.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: t.len(),
        });
    }
    if t.iter().any(|&x| x.abs() > 1.0) {
        return Err(Error::domain("t must lie in [-1, 1]^K"));
    }
    let lambda = spec.lambda();
    let mut interaction = 0.0;
    let mut sig = vec![0usize; p as usize];
    for flat in 0..k.pow(p) {
        let mut rest = flat;
        for pos in (0..p as usize).rev() {
            sig[pos] = rest % k;
            rest /= k;
        }
        let mut term = spec.theta_at(&sig);
        for &b in &sig {
            term *= lambda[b] * t[b];
        }
        interaction += term;
    }
    let entropy: f64 = lambda
        .iter()
        .zip(t)
        .map(|(&l, &tj)| l * binary_entropy(tj))
        .sum();
    Ok(beta * interaction - entropy)
}

/// Gradient of φ_β in t (interior points only).
pub fn phi_grad(spec: &HsbmSpec, beta: f64, t: &[f64]) -> Result<Vec<f64>> {
    let k = spec.communities();
    if t.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            got: t.len(),
        });
    }
    if t.iter().any(|&x| x.abs() >= 1.0) {
        return Err(Error::domain("gradient needs interior t"));
    }
    let v = hsbm_variational(spec);
    let mut grad = Vec::with_capacity(k);
    for j in 0..k {
        let coeffs = (v.slice)(j, t);
        let ds: f64 = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(r, &c)| r as f64 * c * t[j].powi(r as i32 - 1))
            .sum();
        grad.push(beta * ds - spec.lambda()[j] * t[j].atanh());
    }
    Ok(grad)
}

/// Phase-transition threshold of the Ising model on a HSBM.
pub fn threshold_hsbm(spec: &HsbmSpec, tol: f64) -> Result<ThresholdResult> {
    if spec.communities() > MAX_COMMUNITIES {
        return Err(Error::spec(format!(
            "grid-based inner solver supports K <= {MAX_COMMUNITIES}"
        )));
    }
    hsbm_variational(spec).solve(tol)
}

/// Threshold of the random p-partite model with part proportions λ: the
/// interaction term is the single product β θ Π_j λ_j t_j.
pub fn threshold_partite(p: u32, lambda: &[f64], theta: f64, tol: f64) -> Result<ThresholdResult> {
    if lambda.len() != p as usize {
        return Err(Error::spec("need exactly p part proportions"));
    }
    let total: f64 = lambda.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::spec("part proportions must sum to 1"));
    }
    if !(theta > 0.0 && theta <= 1.0) {
        return Err(Error::spec("theta must lie in (0, 1]"));
    }
    let k = p as usize;
    let slice = move |j: usize, t: &[f64]| -> Vec<f64> {
        let mut c1 = theta;
        for (idx, (&l, &tv)) in lambda.iter().zip(t).enumerate() {
            c1 *= if idx == j { l } else { l * tv };
        }
        vec![0.0, c1]
    };
    let v = Variational {
        k,
        lambda,
        slice: Box::new(slice),
    };
    v.solve(tol)
}

/// Equipartite p-partite threshold (all parts of proportion 1/p); equals
/// p^p times the Erdős–Rényi threshold at the same θ.
pub fn threshold_equipartite(p: u32, theta: f64, tol: f64) -> Result<f64> {
    let lambda = vec![1.0 / p as f64; p as usize];
    Ok(threshold_partite(p, &lambda, theta, tol)?.beta_star)
}

/// Curie-Weiss thresholds β*_CW(p) for p = 2..=p_max: the K = 1, θ = 1
/// case of the block-model threshold. Strictly increasing toward ln 2.
pub fn cw_threshold_table(p_max: u32, tol: f64) -> Result<Vec<(u32, f64)>> {
    if p_max < 2 {
        return Err(Error::domain("p_max must be at least 2"));
    }
    (2..=p_max)
        .map(|p| {
            let spec = HsbmSpec::erdos_renyi(p, 1.0)?;
            Ok((p, threshold_hsbm(&spec, tol)?.beta_star))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_vanishes_at_origin() {
        let spec = HsbmSpec::new(3, vec![0.4, 0.6], vec![0.5; 8]).unwrap();
        for beta in [0.0, 0.7, 3.0] {
            assert_eq!(phi_eval(&spec, beta, &[0.0, 0.0]).unwrap(), 0.0);
        }
    }

    #[test]
    fn single_block_reduces_to_er_objective() {
        let spec = HsbmSpec::erdos_renyi(3, 0.8).unwrap();
        for &t in &[0.2, 0.5, 0.9] {
            let phi = phi_eval(&spec, 0.7, &[t]).unwrap();
            let direct = 0.7 * 0.8 * t.powi(3) - binary_entropy(t);
            assert!((phi - direct).abs() < 1e-14);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let spec = HsbmSpec::new(
            3,
            vec![0.3, 0.7],
            vec![0.9, 0.3, 0.3, 0.2, 0.3, 0.2, 0.2, 0.7],
        )
        .unwrap();
        let beta = 0.9;
        let t = [0.35, -0.2];
        let grad = phi_grad(&spec, beta, &t).unwrap();
        let step = 1e-6;
        for j in 0..2 {
            let mut tp = t;
            let mut tm = t;
            tp[j] += step;
            tm[j] -= step;
            let fd = (phi_eval(&spec, beta, &tp).unwrap() - phi_eval(&spec, beta, &tm).unwrap())
                / (2.0 * step);
            let rel = (fd - grad[j]).abs() / grad[j].abs().max(1.0);
            assert!(rel < 1e-6, "coord {j}: fd {fd} vs grad {}", grad[j]);
        }
    }

    #[test]
    fn er_thresholds_match_known_values() {
        let t2 = threshold_hsbm(&HsbmSpec::erdos_renyi(2, 1.0).unwrap(), 1e-5).unwrap();
        assert!((t2.beta_star - 0.5).abs() < 1e-4, "{}", t2.beta_star);
        let t3 = threshold_hsbm(&HsbmSpec::erdos_renyi(3, 1.0).unwrap(), 1e-5).unwrap();
        assert!((t3.beta_star - 0.672).abs() < 0.002, "{}", t3.beta_star);
        let t4 = threshold_hsbm(&HsbmSpec::erdos_renyi(4, 1.0).unwrap(), 1e-5).unwrap();
        assert!((t4.beta_star - 0.689).abs() < 0.002, "{}", t4.beta_star);
    }

    #[test]
    fn er_scaling_in_theta() {
        let full = threshold_hsbm(&HsbmSpec::erdos_renyi(3, 1.0).unwrap(), 1e-6)
            .unwrap()
            .beta_star;
        for &theta in &[0.25, 0.5] {
            let scaled = threshold_hsbm(&HsbmSpec::erdos_renyi(3, theta).unwrap(), 1e-6)
                .unwrap()
                .beta_star;
            assert!(
                (scaled * theta - full).abs() < 2e-5,
                "theta {theta}: {scaled}"
            );
        }
    }

    #[test]
    fn equipartite_is_p_to_the_p_times_er() {
        for p in [2u32, 3] {
            let er = threshold_hsbm(&HsbmSpec::erdos_renyi(p, 1.0).unwrap(), 1e-6)
                .unwrap()
                .beta_star;
            let eq = threshold_equipartite(p, 1.0, 1e-5).unwrap();
            let expect = (p as f64).powi(p as i32) * er;
            assert!(
                (eq - expect).abs() / expect < 5e-3,
                "p={p}: {eq} vs {expect}"
            );
        }
        // scaling in θ
        let eq1 = threshold_equipartite(2, 1.0, 1e-5).unwrap();
        let eq_half = threshold_equipartite(2, 0.5, 1e-5).unwrap();
        assert!((eq_half - 2.0 * eq1).abs() < 1e-3);
    }

    #[test]
    fn cw_table_increasing_below_log2() {
        let table = cw_threshold_table(10, 1e-6).unwrap();
        let ln2 = std::f64::consts::LN_2;
        for w in table.windows(2) {
            assert!(w[0].1 < w[1].1, "not increasing at p = {}", w[1].0);
        }
        for &(p, b) in &table {
            assert!(b < ln2, "p = {p}: {b} >= ln 2");
        }
        assert!((table[0].1 - 0.5).abs() < 1e-4);
        // approach toward ln 2
        assert!(table.last().unwrap().1 > 0.69);
    }

    #[test]
    fn sup_nondecreasing_in_beta() {
        let spec = HsbmSpec::new(
            2,
            vec![0.5, 0.5],
            vec![0.9, 0.1, 0.1, 0.9],
        )
        .unwrap();
        let v = hsbm_variational(&spec);
        let mut prev = -1.0;
        for i in 0..8 {
            let beta = 0.3 + 0.2 * i as f64;
            let (_, sup) = v.inner_sup(beta);
            assert!(sup >= prev - 1e-12);
            prev = sup;
        }
    }

    #[test]
    fn inner_solver_agrees_with_dense_grid_oracle() {
        // K = 1: replace the polished inner solver with a 1e6-point grid
        // scan inside the same outer bisection; β* must agree to 1e-5.
        let theta = 1.0;
        let p = 3;
        let dense_positive = |beta: f64| -> bool {
            let mut sup: f64 = 0.0;
            for i in 1..1_000_000 {
                let t = i as f64 / 1_000_000.0;
                sup = sup.max(beta * theta * t.powi(p) - binary_entropy(t));
            }
            sup > 0.0
        };
        let mut lo = 0.5;
        let mut hi = 0.8;
        while hi - lo > 1e-7 {
            let mid = 0.5 * (lo + hi);
            if dense_positive(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let oracle = 0.5 * (lo + hi);
        let solver = threshold_hsbm(&HsbmSpec::erdos_renyi(3, 1.0).unwrap(), 1e-7)
            .unwrap()
            .beta_star;
        assert!((solver - oracle).abs() < 1e-5, "{solver} vs {oracle}");
    }

    #[test]
    fn rejects_too_many_communities() {
        let k = 7usize;
        let lambda = vec![1.0 / 7.0; 7];
        let spec = HsbmSpec::new(2, lambda, vec![0.5; k * k]).unwrap();
        assert!(threshold_hsbm(&spec, 1e-4).is_err());
    }
}
