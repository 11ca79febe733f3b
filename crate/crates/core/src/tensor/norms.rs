//! Spectral diagnostics by power iteration on implicit matrices: the local
//! interaction matrix J(x) (the tensor contracted against x on p-2 slots)
//! and the co-degree matrix of absolute hyperedge weights. Matrix-vector
//! products are accumulated edge-wise, never materializing the matrix.

use crate::error::Result;
use crate::rng::rng_from_seed;
use crate::tensor::model::Model;
use crate::tensor::sparse::{SparseTensor, SpinVector};

const RAYLEIGH_TOL: f64 = 1e-8;

fn factorial(k: u32) -> f64 {
    (1..=k as u64).map(|v| v as f64).product()
}

/// Largest |eigenvalue| of the symmetric operator `matvec` by power
/// iteration with a deterministic start and one seeded random restart.
pub fn power_iteration_norm(
    n: usize,
    matvec: impl Fn(&[f64]) -> Vec<f64>,
    max_iters: usize,
) -> f64 {
    let run = |v0: Vec<f64>| -> f64 {
        let mut v = v0;
        let norm0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm0);
        let mut prev_rayleigh = f64::INFINITY;
        let mut estimate = 0.0;
        for _ in 0..max_iters {
            let w = matvec(&v);
            let wnorm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if wnorm == 0.0 {
                return 0.0;
            }
            let rayleigh: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
            estimate = wnorm;
            v = w;
            v.iter_mut().for_each(|x| *x /= wnorm);
            if (rayleigh - prev_rayleigh).abs() <= RAYLEIGH_TOL * rayleigh.abs().max(1.0) {
                break;
            }
            prev_rayleigh = rayleigh;
        }
        estimate
    };

    let uniform = vec![1.0 / (n as f64).sqrt(); n];
    let random = {
        use rand::Rng;
        let mut rng = rng_from_seed(0x9d2c_5680);
        (0..n).map(|_| rng.random::<f64>() - 0.5).collect::<Vec<f64>>()
    };
    run(uniform).max(run(random))
}

/// Edge-wise product of the local interaction matrix with v:
/// (J(x) v)_i = (p-2)! Σ_{e∋i} c_e Π_{j∈e\{i,k}} x_j v_k summed over
/// k ∈ e\{i}; for ±1 spins the inner product collapses to the per-edge
/// quantities P_e = Π_{j∈e} x_j and T_e = Σ_{j∈e} x_j v_j.
fn interaction_matvec(t: &SparseTensor, x: &SpinVector, v: &[f64]) -> Vec<f64> {
    let mult = factorial(t.order() - 2);
    let mut out = vec![0.0; t.size()];
    for e in t.edges() {
        let pe: i32 = e.verts.iter().map(|&u| x.get(u as usize) as i32).product();
        let te: f64 = e
            .verts
            .iter()
            .map(|&u| x.get(u as usize) as f64 * v[u as usize])
            .sum();
        let scale = mult * e.coeff * pe as f64;
        for &u in &e.verts {
            let ui = u as usize;
            let xi = x.get(ui) as f64;
            out[ui] += scale * xi * (te - xi * v[ui]);
        }
    }
    out
}

/// Co-degree matrix product: (D v)_i = Σ_{e∋i} |c_e| Σ_{k∈e\{i}} v_k.
fn codegree_matvec(t: &SparseTensor, v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; t.size()];
    for e in t.edges() {
        let c = e.coeff.abs();
        let total: f64 = e.verts.iter().map(|&u| v[u as usize]).sum();
        for &u in &e.verts {
            out[u as usize] += c * (total - v[u as usize]);
        }
    }
    out
}

/// ‖J(x)‖₂ of the local interaction matrix at configuration x.
pub fn local_interaction_norm(model: &Model, x: &SpinVector, iters: usize) -> Result<f64> {
    assert!(iters >= 1);
    model.hamiltonian(x)?; // dimension check
    Ok(match model {
        Model::Sparse(t) => {
            power_iteration_norm(t.size(), |v| interaction_matvec(t, x, v), iters)
        }
        Model::Cw(c) => {
            // All-tuples contraction is the rank-one matrix
            // (x̄^{p-2}/n) 11ᵀ with norm |x̄|^{p-2}.
            let n = c.n;
            let scale = x.mean().powi(c.p as i32 - 2) / n as f64;
            power_iteration_norm(
                n,
                |v| {
                    let s: f64 = v.iter().sum();
                    vec![scale * s; n]
                },
                iters,
            )
        }
    })
}

/// ‖D‖₂ of the co-degree matrix d(i,j) = Σ_{e ⊇ {i,j}} |c_e|.
pub fn codegree_norm(model: &Model) -> Result<f64> {
    Ok(match model {
        Model::Sparse(t) => power_iteration_norm(t.size(), |v| codegree_matvec(t, v), 500),
        Model::Cw(c) => {
            let n = c.n;
            let scale = 1.0 / (factorial(c.p - 2) * n as f64);
            power_iteration_norm(
                n,
                |v| {
                    let s: f64 = v.iter().sum();
                    vec![scale * s; n]
                },
                500,
            )
        }
    })
}
