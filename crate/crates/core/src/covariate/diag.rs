//! Diagnostics for the standing assumptions of the penalized estimator:
//! network norms, design conditioning, and the β bound. Violations are
//! flagged but never forbidden.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::covariate::model::CovariateModel;

#[derive(Debug, Clone, Serialize)]
pub struct AssumptionReport {
    /// ‖A‖_∞ (max absolute row sum); the network-boundedness assumption
    /// requires ≤ 1.
    pub a_inf_norm: f64,
    /// ‖A‖_F²/N; must stay bounded away from zero for identifiability.
    pub a_frobenius_sq_over_n: f64,
    /// ‖A‖₂ and the Dobrushin proxy 4β‖A‖₂.
    pub a_spectral_norm: f64,
    pub dobrushin_coefficient: f64,
    /// λ_min(ZᵀZ/N); design conditioning.
    pub gram_min_eigenvalue: f64,
    pub z_max_abs: f64,
    pub theta_max_abs: f64,
    pub beta_abs: f64,
    /// Flags: true means the assumption holds.
    pub bounded_row_norm: bool,
    pub frobenius_positive: bool,
    pub beta_below_quarter: bool,
    pub design_nondegenerate: bool,
}

/// Compute the assumption diagnostics of a covariate model.
pub fn assumption_report(model: &CovariateModel) -> AssumptionReport {
    let n = model.nodes();
    let d = model.dim();
    let a_inf = model.a_inf_norm();
    let a_fro = model.a_frobenius_sq() / n as f64;
    let a_spec = model.a_spectral_norm();

    let mut gram = DMatrix::zeros(d, d);
    for i in 0..n {
        let row = model.covariate_row(i);
        for a in 0..d {
            for b in a..d {
                gram[(a, b)] += row[a] * row[b];
            }
        }
    }
    for a in 0..d {
        for b in 0..a {
            gram[(a, b)] = gram[(b, a)];
        }
    }
    gram /= n as f64;
    let min_eig = gram
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);

    let z_max = (0..n)
        .flat_map(|i| model.covariate_row(i).iter().map(|z| z.abs()).collect::<Vec<_>>())
        .fold(0.0, f64::max);
    let theta_max = model.theta.iter().map(|t| t.abs()).fold(0.0, f64::max);

    AssumptionReport {
        a_inf_norm: a_inf,
        a_frobenius_sq_over_n: a_fro,
        a_spectral_norm: a_spec,
        dobrushin_coefficient: 4.0 * model.beta.abs() * a_spec,
        gram_min_eigenvalue: min_eig,
        z_max_abs: z_max,
        theta_max_abs: theta_max,
        beta_abs: model.beta.abs(),
        bounded_row_norm: a_inf <= 1.0 + 1e-12,
        frobenius_positive: a_fro > 1e-12,
        beta_below_quarter: model.beta.abs() < 0.25,
        design_nondegenerate: min_eig > 1e-12,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    #[test]
    fn complete_graph_passes_row_bound() {
        let n = 20;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j, 1.0 / n as f64));
            }
        }
        let m = CovariateModel::new(n, &edges, vec![1.0; n], 0.1, vec![0.0]).unwrap();
        let rep = assumption_report(&m);
        assert!((rep.a_inf_norm - (n as f64 - 1.0) / n as f64).abs() < 1e-12);
        assert!(rep.bounded_row_norm);
    }

    #[test]
    fn zero_column_flags_design() {
        let n = 15;
        let d = 2;
        let mut z = vec![0.0; n * d];
        for i in 0..n {
            z[i * d] = 1.0; // second column all zero
        }
        let m = CovariateModel::new(n, &[(0, 1, 0.5)], z, 0.1, vec![0.0, 0.0]).unwrap();
        let rep = assumption_report(&m);
        assert!(rep.gram_min_eigenvalue.abs() < 1e-12);
        assert!(!rep.design_nondegenerate);
    }

    #[test]
    fn rademacher_design_is_well_conditioned() {
        let n = 1000;
        let d = 10;
        let mut rng = rng_from_seed(66);
        let z: Vec<f64> = (0..n * d)
            .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
            .collect();
        let m = CovariateModel::new(n, &[(0, 1, 0.5)], z, 0.2, vec![0.0; d]).unwrap();
        let rep = assumption_report(&m);
        assert!(rep.gram_min_eigenvalue > 0.5, "{}", rep.gram_min_eigenvalue);
        assert!(rep.design_nondegenerate);
        assert!(rep.beta_below_quarter);
        assert_eq!(rep.z_max_abs, 1.0);
    }
}
