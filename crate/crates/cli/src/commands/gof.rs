//! `tising gof`: simulation goodness-of-fit for a pairwise or triplet
//! Ising model fitted by MPLE.

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde::Serialize;

use crate::output::{write_json, AnyError};
use tensor_ising::mc::{gof_test, GofOptions, GofReport};

#[derive(Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct GofArgs {
    /// Hyperedge model file (p must be 2 or 3)
    #[arg(long)]
    graph: PathBuf,
    /// Observed spin row
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value_t = 0)]
    row: usize,
    #[arg(long, default_value_t = 100)]
    sims: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    burn_in: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct GofOutput<'a> {
    report: GofReport,
    runtime_ms: u128,
    config: &'a GofArgs,
}

pub fn run(args: GofArgs) -> Result<(), AnyError> {
    let start = Instant::now();
    let graph = super::load_model_file(&args.graph)?;
    let rows = super::load_spin_rows(&args.data)?;
    let x = rows
        .get(args.row)
        .ok_or_else(|| format!("--row {} out of range ({} rows)", args.row, rows.len()))?;
    let report = gof_test(
        &graph,
        x,
        args.sims,
        args.seed,
        GofOptions {
            burn_in: args.burn_in,
            ..GofOptions::default()
        },
    )?;
    let output = GofOutput {
        report,
        runtime_ms: start.elapsed().as_millis(),
        config: &args,
    };
    write_json(args.out.as_deref(), &output)
}
