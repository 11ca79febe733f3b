//! `tising threshold`: phase-transition thresholds of Ising models on
//! random hypergraphs via the mean-field variational problem.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde::Serialize;

use crate::output::{write_json, AnyError};
use tensor_ising::models::{
    cw_threshold_table, threshold_equipartite, threshold_hsbm, HsbmSpec,
};

#[derive(Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct ThresholdArgs {
    /// Erdős–Rényi p-hypergraph (with --p, --theta)
    #[arg(long, default_value_t = false)]
    er: bool,
    /// Equipartite p-partite hypergraph (with --p, --theta)
    #[arg(long, default_value_t = false)]
    equipartite: bool,
    /// HSBM spec file ("p K", proportions, K^p theta entries)
    #[arg(long)]
    hsbm_spec: Option<PathBuf>,
    /// Curie-Weiss threshold table for p = 2..=p-max
    #[arg(long, default_value_t = false)]
    cw_table: bool,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    #[arg(long, default_value_t = 8)]
    p_max: u32,
    #[arg(long, default_value_t = 1e-5)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct ThresholdOutput<'a> {
    beta_star: Option<f64>,
    argmax_t: Option<Vec<f64>>,
    table: Option<Vec<(u32, f64)>>,
    tolerance: f64,
    runtime_ms: u128,
    config: &'a ThresholdArgs,
}

pub fn run(args: ThresholdArgs) -> Result<(), AnyError> {
    let start = Instant::now();
    let mut output = ThresholdOutput {
        beta_star: None,
        argmax_t: None,
        table: None,
        tolerance: args.tol,
        runtime_ms: 0,
        config: &args,
    };
    let selections =
        args.er as u8 + args.equipartite as u8 + args.cw_table as u8 + args.hsbm_spec.is_some() as u8;
    if selections != 1 {
        return Err("choose exactly one of --er, --equipartite, --hsbm-spec, --cw-table".into());
    }

    if args.er {
        let p = args.p.ok_or("--p is required")?;
        let spec = HsbmSpec::erdos_renyi(p, args.theta)?;
        let result = threshold_hsbm(&spec, args.tol)?;
        output.beta_star = Some(result.beta_star);
        output.argmax_t = Some(result.argmax_t);
    } else if args.equipartite {
        let p = args.p.ok_or("--p is required")?;
        output.beta_star = Some(threshold_equipartite(p, args.theta, args.tol)?);
    } else if let Some(path) = &args.hsbm_spec {
        let spec = HsbmSpec::parse(&crate::output::read_file(path)?)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        let result = threshold_hsbm(&spec, args.tol)?;
        output.beta_star = Some(result.beta_star);
        output.argmax_t = Some(result.argmax_t);
    } else {
        output.table = Some(cw_threshold_table(args.p_max, args.tol)?);
    }

    output.runtime_ms = start.elapsed().as_millis();
    write_json(args.out.as_deref(), &output)
}
