//! Gibbs sampling for the covariate model: one systematic sweep resamples
//! each site from P(X_i = 1 | rest) = sigmoid(2(θᵀZ_i + β m_i(x))).

use rand::Rng;

use crate::covariate::model::CovariateModel;
use crate::error::{Error, Result};
use crate::numeric::sigmoid;
use crate::tensor::SpinVector;

/// One systematic-scan sweep under the model's own (β, θ).
pub fn gibbs_covariate(
    model: &CovariateModel,
    mut x: SpinVector,
    rng: &mut impl Rng,
) -> Result<SpinVector> {
    if x.len() != model.nodes() {
        return Err(Error::DimensionMismatch {
            expected: model.nodes(),
            got: x.len(),
        });
    }
    for i in 0..model.nodes() {
        let lin: f64 = model
            .covariate_row(i)
            .iter()
            .zip(&model.theta)
            .map(|(&z, &t)| z * t)
            .sum();
        let a = model.beta * model.network_field(&x, i) + lin;
        let s = if rng.random::<f64>() < sigmoid(2.0 * a) {
            1
        } else {
            -1
        };
        x.set(i, s);
    }
    Ok(x)
}

/// Run `sweeps` systematic sweeps.
pub fn gibbs_covariate_run(
    model: &CovariateModel,
    mut x: SpinVector,
    sweeps: usize,
    rng: &mut impl Rng,
) -> Result<SpinVector> {
    for _ in 0..sweeps {
        x = gibbs_covariate(model, x, rng)?;
    }
    Ok(x)
}
