//! `tising phasediagram`: classify a (β, h) grid and write TSV kind codes
//! (0 regular, 1 special, 2 weakly critical, 3 strongly critical).

use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use serde::Serialize;

use crate::output::{write_json, write_text, AnyError};
use tensor_ising::mc::phase_diagram;

#[derive(Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct PhaseArgs {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 0.01)]
    beta_min: f64,
    #[arg(long, default_value_t = 1.0)]
    beta_max: f64,
    #[arg(long, default_value_t = -0.5)]
    h_min: f64,
    #[arg(long, default_value_t = 0.5)]
    h_max: f64,
    /// Grid points per axis
    #[arg(long, default_value_t = 50)]
    grid: usize,
    /// TSV output path (beta, h, kind)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct PhaseMeta<'a> {
    nodes: usize,
    counts_by_kind: [usize; 4],
    runtime_ms: u128,
    config: &'a PhaseArgs,
}

pub fn run(args: PhaseArgs) -> Result<(), AnyError> {
    let start = Instant::now();
    let diagram = phase_diagram(
        args.p,
        (args.beta_min, args.beta_max),
        (args.h_min, args.h_max),
        (args.grid, args.grid),
    )?;
    write_text(Some(&args.out), &diagram.to_tsv())?;
    let mut counts = [0usize; 4];
    for &k in &diagram.kinds {
        counts[k as usize] += 1;
    }
    let meta = PhaseMeta {
        nodes: diagram.kinds.len(),
        counts_by_kind: counts,
        runtime_ms: start.elapsed().as_millis(),
        config: &args,
    };
    write_json(Some(&args.out.with_extension("json")), &meta)
}
