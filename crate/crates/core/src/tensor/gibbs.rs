//! Systematic-scan Gibbs sampling. Each site is resampled from its exact
//! full conditional; sparse chains keep per-edge spin products and per-site
//! field sums so a flip costs O(p · deg) instead of a full recomputation.

use rand::Rng;

use crate::error::Result;
use crate::numeric::sigmoid;
use crate::tensor::model::Model;
use crate::tensor::sparse::SpinVector;

fn factorial(k: u32) -> f64 {
    (1..=k as u64).map(|v| v as f64).product()
}

enum Aux {
    Sparse {
        /// c_e · Π_{j∈e} x_j per edge.
        prod: Vec<f64>,
        /// Σ_{e∋i} prod[e] per site; m_i = (p-1)! · site_sum[i] · x_i.
        site_sum: Vec<f64>,
    },
    Cw {
        spin_total: i64,
    },
}

/// A single Markov chain owning its spin state. Multiple chains with
/// independent seeds can run concurrently; one chain is single-threaded.
pub struct GibbsChain<'a> {
    model: &'a Model,
    beta: f64,
    h_field: Option<Vec<f64>>,
    x: SpinVector,
    aux: Aux,
}

impl<'a> GibbsChain<'a> {
    pub fn new(
        model: &'a Model,
        beta: f64,
        h_field: Option<Vec<f64>>,
        x0: SpinVector,
    ) -> Result<Self> {
        model.hamiltonian(&x0)?; // dimension check
        if let Some(h) = &h_field {
            if h.len() != model.size() {
                return Err(crate::error::Error::DimensionMismatch {
                    expected: model.size(),
                    got: h.len(),
                });
            }
        }
        let aux = match model {
            Model::Sparse(t) => {
                let prod: Vec<f64> = t
                    .edges()
                    .iter()
                    .map(|e| {
                        let sign: i32 = e.verts.iter().map(|&v| x0.get(v as usize) as i32).product();
                        e.coeff * sign as f64
                    })
                    .collect();
                let mut site_sum = vec![0.0; t.size()];
                for (idx, e) in t.edges().iter().enumerate() {
                    for &v in &e.verts {
                        site_sum[v as usize] += prod[idx];
                    }
                }
                Aux::Sparse { prod, site_sum }
            }
            Model::Cw(_) => Aux::Cw {
                spin_total: x0.spins().iter().map(|&s| s as i64).sum(),
            },
        };
        Ok(GibbsChain {
            model,
            beta,
            h_field,
            x: x0,
            aux,
        })
    }

    pub fn state(&self) -> &SpinVector {
        &self.x
    }

    pub fn into_state(self) -> SpinVector {
        self.x
    }

    /// Current local field at site i from the incremental tables.
    pub fn local_field(&self, i: usize) -> f64 {
        match (&self.aux, self.model) {
            (Aux::Sparse { site_sum, .. }, Model::Sparse(t)) => {
                factorial(t.order() - 1) * site_sum[i] * self.x.get(i) as f64
            }
            (Aux::Cw { spin_total }, Model::Cw(c)) => {
                (*spin_total as f64 / c.n as f64).powi(c.p as i32 - 1)
            }
            _ => unreachable!("aux variant matches model variant"),
        }
    }

    fn field_at(&self, i: usize) -> f64 {
        self.h_field.as_ref().map_or(0.0, |h| h[i])
    }

    /// Log-odds of X_i = +1 against X_i = -1 given the rest.
    fn log_odds(&self, i: usize) -> f64 {
        match (&self.aux, self.model) {
            (Aux::Sparse { .. }, Model::Sparse(t)) => {
                let p = t.order();
                let m_i = self.local_field(i);
                2.0 * (p as f64 * self.beta * m_i + self.field_at(i))
            }
            (Aux::Cw { spin_total }, Model::Cw(c)) => {
                // The dense tensor keeps its diagonal tuples, so the exact
                // conditional compares n x̄^p with x_i = ±1 directly.
                let n = c.n as f64;
                let rest = (*spin_total - self.x.get(i) as i64) as f64;
                let up = ((rest + 1.0) / n).powi(c.p as i32);
                let down = ((rest - 1.0) / n).powi(c.p as i32);
                self.beta * n * (up - down) + 2.0 * self.field_at(i)
            }
            _ => unreachable!(),
        }
    }

    fn assign(&mut self, i: usize, s: i8) {
        if self.x.get(i) == s {
            return;
        }
        match (&mut self.aux, self.model) {
            (Aux::Sparse { prod, site_sum }, Model::Sparse(t)) => {
                for &e in t.incident_edges(i) {
                    let e = e as usize;
                    let delta = -2.0 * prod[e];
                    prod[e] = -prod[e];
                    for &v in &t.edges()[e].verts {
                        site_sum[v as usize] += delta;
                    }
                }
            }
            (Aux::Cw { spin_total }, Model::Cw(_)) => {
                *spin_total += 2 * s as i64;
            }
            _ => unreachable!(),
        }
        self.x.flip(i);
    }

    /// One systematic scan over all sites.
    pub fn sweep(&mut self, rng: &mut impl Rng) {
        for i in 0..self.model.size() {
            let p_up = sigmoid(self.log_odds(i));
            let s = if rng.random::<f64>() < p_up { 1 } else { -1 };
            self.assign(i, s);
        }
    }

    pub fn run(&mut self, sweeps: usize, rng: &mut impl Rng) {
        for _ in 0..sweeps {
            self.sweep(rng);
        }
    }
}

/// One systematic-scan sweep, returning the new state.
pub fn gibbs_sweep(
    model: &Model,
    x: SpinVector,
    beta: f64,
    h_field: Option<Vec<f64>>,
    rng: &mut impl Rng,
) -> Result<SpinVector> {
    let mut chain = GibbsChain::new(model, beta, h_field, x)?;
    chain.sweep(rng);
    Ok(chain.into_state())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use crate::tensor::model::DenseCw;
    use crate::tensor::sparse::SparseTensor;

    #[test]
    fn free_spins_are_fair_coins() {
        let model = Model::Sparse(SparseTensor::empty(2, 10));
        let mut rng = rng_from_seed(3);
        let mut chain = GibbsChain::new(&model, 0.0, None, SpinVector::all_up(10)).unwrap();
        let mut sums = vec![0i64; 10];
        for _ in 0..10_000 {
            chain.sweep(&mut rng);
            for i in 0..10 {
                sums[i] += chain.state().get(i) as i64;
            }
        }
        for s in sums {
            assert!((s as f64 / 10_000.0).abs() < 0.03);
        }
    }

    #[test]
    fn incremental_fields_match_recomputation() {
        let mut rng = rng_from_seed(17);
        let t = {
            // a dense-ish random 3-tensor on 30 vertices
            use rand::Rng;
            let mut edges = Vec::new();
            for a in 0..30u32 {
                for b in a + 1..30 {
                    for c in b + 1..30 {
                        if rng.random::<f64>() < 0.05 {
                            edges.push((vec![a, b, c], rng.random::<f64>() - 0.5));
                        }
                    }
                }
            }
            SparseTensor::new(3, 30, edges).unwrap()
        };
        let model = Model::Sparse(t);
        let x0 = SpinVector::random(30, &mut rng);
        let mut chain = GibbsChain::new(&model, 0.3, None, x0).unwrap();
        chain.run(50, &mut rng); // 1500 site updates
        let fresh = model.local_fields(chain.state()).unwrap();
        for i in 0..30 {
            assert!(
                (chain.local_field(i) - fresh[i]).abs() < 1e-10,
                "site {i}: {} vs {}",
                chain.local_field(i),
                fresh[i]
            );
        }
    }

    #[test]
    fn two_site_conditionals_match_closed_form() {
        let t = SparseTensor::new(2, 2, vec![(vec![0, 1], 0.7)]).unwrap();
        let model = Model::Sparse(t);
        let beta = 0.45;
        let mut rng = rng_from_seed(5);
        let mut chain = GibbsChain::new(&model, beta, None, SpinVector::all_up(2)).unwrap();
        // Track the empirical law of x_0 updates given x_1 = +1/-1.
        let mut counts = [[0u64; 2]; 2]; // [x1 sign][x0 outcome +]
        let mut totals = [0u64; 2];
        for _ in 0..200_000 {
            chain.sweep(&mut rng);
            let x1 = chain.state().get(1);
            let idx = if x1 == 1 { 0 } else { 1 };
            totals[idx] += 1;
            if chain.state().get(0) == 1 {
                counts[idx][0] += 1;
            }
        }
        // Stationarity: P(x0 = + | x1) = sigmoid(2·2β·0.7·x1); the sampled
        // pair frequencies must match within binomial error.
        for (idx, x1) in [(0usize, 1.0f64), (1, -1.0)] {
            let p = sigmoid(2.0 * 2.0 * beta * 0.7 * x1);
            let emp = counts[idx][0] as f64 / totals[idx] as f64;
            let se = (p * (1.0 - p) / totals[idx] as f64).sqrt();
            assert!(
                (emp - p).abs() < 4.0 * se.max(1e-3),
                "x1={x1}: emp {emp} vs exact {p}"
            );
        }
    }

    #[test]
    fn cw_chain_matches_exact_pmf() {
        // n = 8 matrix Curie-Weiss at β = 0.4: TV between the sampled law
        // of X̄ (thin 5 after burn-in) and the exact pmf under 0.02.
        let n = 8;
        let spec = crate::cw::CwSpec::new(0.4, 0.0, 2, n).unwrap();
        let exact = crate::cw::CwExact::new(spec);
        let model = Model::Cw(DenseCw::new(2, n).unwrap());
        let mut rng = rng_from_seed(2024);
        let mut chain = GibbsChain::new(&model, 0.4, None, SpinVector::all_up(n)).unwrap();
        chain.run(5000, &mut rng);
        let mut counts = vec![0u64; n + 1];
        let samples = 100_000;
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
    }
}
