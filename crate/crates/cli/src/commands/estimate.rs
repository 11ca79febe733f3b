//! `tising estimate`: ML estimation of β or h in the Curie-Weiss model,
//! pseudolikelihood estimation on general tensors, and the L1-penalized
//! fit with covariates. Non-existence is reported as an explicit sentinel
//! with exit code 0.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::output::{write_json, AnyError, EstimateJson};
use tensor_ising::covariate::{
    assumption_report, fit_penalized, parse_covariates_csv, parse_edge_list, parse_responses,
    CovariateModel,
};
use tensor_ising::cw::{confidence_interval_beta, confidence_interval_h, mle_beta, mle_h};
use tensor_ising::tensor::{codegree_norm, local_interaction_norm, mple, mple_cw_ci, Model};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    MleBeta,
    MleH,
    Mple,
    Pmple,
}

#[derive(Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct EstimateArgs {
    #[arg(long, value_enum)]
    method: Method,
    /// Known β (mle-h)
    #[arg(long)]
    beta: Option<f64>,
    /// Known h (mle-beta)
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// Observed sample mean (alternative to --data)
    #[arg(long)]
    xbar: Option<f64>,
    /// Spin data file (one ±1 row); --row selects the row
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    row: usize,
    /// Hyperedge model file for mple
    #[arg(long)]
    edge_file: Option<PathBuf>,
    /// Use the dense Curie-Weiss tensor for mple (with --p, --n)
    #[arg(long, default_value_t = false)]
    cw: bool,
    #[arg(long, default_value_t = 50.0)]
    bracket_max: f64,
    /// Confidence level; adds a CI to the report where supported
    #[arg(long)]
    level: Option<f64>,
    /// Also report spectral diagnostics (mple)
    #[arg(long, default_value_t = false)]
    diagnostics: bool,
    /// Network edge list (pmple)
    #[arg(long)]
    network: Option<PathBuf>,
    /// Covariate CSV, n rows x d columns (pmple)
    #[arg(long)]
    covariates: Option<PathBuf>,
    /// Response column of ±1 (pmple)
    #[arg(long)]
    responses: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 20_000)]
    max_iter: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct EstimateOutput<'a> {
    method: Method,
    report: EstimateJson,
    xbar: Option<f64>,
    critical_set: Option<Vec<f64>>,
    diagnostics: Option<Diagnostics>,
    penalized: Option<PenalizedOutput>,
    runtime_ms: u128,
    config: &'a EstimateArgs,
}

#[derive(Serialize)]
struct Diagnostics {
    codegree_norm: f64,
    local_interaction_norm: f64,
}

#[derive(Serialize)]
struct PenalizedOutput {
    gamma_hat: Vec<f64>,
    lambda: f64,
    converged: bool,
    iterations: usize,
    kkt_residual: f64,
    support: Vec<usize>,
    objective_final: f64,
    assumptions: tensor_ising::covariate::AssumptionReport,
}

fn observed_mean(args: &EstimateArgs) -> Result<f64, AnyError> {
    if let Some(x) = args.xbar {
        return Ok(x);
    }
    let path = args.data.as_ref().ok_or("need --xbar or --data")?;
    let rows = super::load_spin_rows(path)?;
    let row = rows
        .get(args.row)
        .ok_or_else(|| format!("--row {} out of range ({} rows)", args.row, rows.len()))?;
    Ok(row.mean())
}

pub fn run(args: EstimateArgs) -> Result<(), AnyError> {
    let start = Instant::now();
    let mut output = EstimateOutput {
        method: args.method,
        report: EstimateJson {
            estimate: None,
            sentinel: None,
            std_error: None,
            ci: None,
            iterations: 0,
            residual: 0.0,
        },
        xbar: None,
        critical_set: None,
        diagnostics: None,
        penalized: None,
        runtime_ms: 0,
        config: &args,
    };

    match args.method {
        Method::MleBeta => {
            let h = args.h.ok_or("--h (known field) is required")?;
            let p = args.p.ok_or("--p is required")?;
            let n = args.n.ok_or("--n is required")?;
            let xbar = observed_mean(&args)?;
            let mut fit = mle_beta(h, p, n, xbar)?;
            if let Some(level) = args.level {
                if fit.is_finite() && xbar != 0.0 {
                    let region = confidence_interval_beta(h, p, n, xbar, fit.estimate, level)?;
                    fit.ci = Some((region.lo, region.hi));
                    output.critical_set = Some(region.critical_points);
                }
            }
            output.xbar = Some(xbar);
            output.report = (&fit).into();
        }
        Method::MleH => {
            let beta = args.beta.ok_or("--beta (known temperature) is required")?;
            let p = args.p.ok_or("--p is required")?;
            let n = args.n.ok_or("--n is required")?;
            let xbar = observed_mean(&args)?;
            let mut fit = mle_h(beta, p, n, xbar)?;
            if let Some(level) = args.level {
                if fit.is_finite() && xbar.abs() < 1.0 {
                    let region = confidence_interval_h(beta, p, n, xbar, fit.estimate, level)?;
                    fit.ci = Some((region.lo, region.hi));
                    output.critical_set = Some(region.critical_points);
                }
            }
            output.xbar = Some(xbar);
            output.report = (&fit).into();
        }
        Method::Mple => {
            let data = args.data.as_ref().ok_or("--data is required")?;
            let rows = super::load_spin_rows(data)?;
            let x = rows
                .get(args.row)
                .ok_or_else(|| format!("--row {} out of range", args.row))?;
            let model = if args.cw {
                super::dense_cw_model(
                    args.p.ok_or("--p is required with --cw")?,
                    args.n.unwrap_or(x.len()),
                )?
            } else {
                let path = args.edge_file.as_ref().ok_or("--edge-file or --cw required")?;
                Model::Sparse(super::load_model_file(path)?)
            };
            let fit = if args.cw {
                match args.level {
                    Some(level) if x.mean() != 0.0 => mple_cw_ci(
                        model.order(),
                        x.mean(),
                        x.len(),
                        level,
                    )?,
                    _ => mple(&model, x, args.bracket_max)?,
                }
            } else {
                mple(&model, x, args.bracket_max)?
            };
            if args.diagnostics {
                output.diagnostics = Some(Diagnostics {
                    codegree_norm: codegree_norm(&model)?,
                    local_interaction_norm: local_interaction_norm(&model, x, 500)?,
                });
            }
            output.xbar = Some(x.mean());
            output.report = (&fit).into();
        }
        Method::Pmple => {
            let net = args.network.as_ref().ok_or("--network is required")?;
            let cov = args.covariates.as_ref().ok_or("--covariates is required")?;
            let resp = args.responses.as_ref().ok_or("--responses is required")?;
            let (n_net, edges) = parse_edge_list(&crate::output::read_file(net)?)
                .map_err(|e| format!("{}: {e}", net.display()))?;
            let (n, d, z) = parse_covariates_csv(&crate::output::read_file(cov)?)
                .map_err(|e| format!("{}: {e}", cov.display()))?;
            if n_net > n {
                return Err(format!("network references node {} but covariates have {n} rows", n_net - 1).into());
            }
            let x = parse_responses(&crate::output::read_file(resp)?)
                .map_err(|e| format!("{}: {e}", resp.display()))?;
            if x.len() != n {
                return Err(format!("{} responses but {n} covariate rows", x.len()).into());
            }
            let model = CovariateModel::new(n, &edges, z, 0.0, vec![0.0; d])?;
            let fit = fit_penalized(&model, &x, args.delta, args.max_iter, args.tol)?;
            output.report = EstimateJson {
                estimate: Some(fit.gamma_hat[0]),
                sentinel: None,
                std_error: None,
                ci: None,
                iterations: fit.iterations,
                residual: fit.kkt_residual,
            };
            output.penalized = Some(PenalizedOutput {
                gamma_hat: fit.gamma_hat.clone(),
                lambda: fit.lambda,
                converged: fit.converged,
                iterations: fit.iterations,
                kkt_residual: fit.kkt_residual,
                support: fit.support.clone(),
                objective_final: *fit.objective_trace.last().unwrap(),
                assumptions: assumption_report(&model),
            });
        }
    }

    output.runtime_ms = start.elapsed().as_millis();
    write_json(args.out.as_deref(), &output)
}
