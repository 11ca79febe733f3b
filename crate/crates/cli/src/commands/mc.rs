//! `tising mc`: replicated sampling-distribution and coverage experiments
//! for the Curie-Weiss estimators. Histograms go to TSV, summaries to JSON.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::output::{write_json, write_text, AnyError};
use tensor_ising::mc::{
    run_coverage, run_sampling_distribution, CoverageTarget, Estimand, ExperimentSpec,
};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Sampling,
    Coverage,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimandArg {
    Xbar,
    MpleBeta,
    MleBeta,
    MleH,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetArg {
    H,
    Beta,
}

#[derive(Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct McArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    h: f64,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "xbar")]
    estimand: EstimandArg,
    #[arg(long, default_value_t = 1000)]
    reps: usize,
    /// Exponent a in N^a (estimate - center); 0 keeps raw values
    #[arg(long, default_value_t = 0.5)]
    scaling: f64,
    /// Centering value; the natural center is used when omitted
    #[arg(long)]
    center: Option<f64>,
    #[arg(long, default_value_t = 60)]
    bins: usize,
    #[arg(long, value_enum, default_value = "h")]
    target: TargetArg,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Histogram TSV path (sampling experiments)
    #[arg(long)]
    out_hist: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct McOutput<'a> {
    sampling: Option<tensor_ising::mc::SamplingReport>,
    coverage: Option<CoverageSummary>,
    runtime_ms: u128,
    config: &'a McArgs,
}

#[derive(Serialize)]
struct CoverageSummary {
    coverage: f64,
    level: f64,
    replications: usize,
    degenerate: usize,
}

pub fn run(args: McArgs) -> Result<(), AnyError> {
    let start = Instant::now();
    let spec = ExperimentSpec {
        beta: args.beta,
        h: args.h,
        p: args.p,
        n: args.n,
        estimand: match args.estimand {
            EstimandArg::Xbar => Estimand::SampleMean,
            EstimandArg::MpleBeta => Estimand::MpleBeta,
            EstimandArg::MleBeta => Estimand::MleBeta,
            EstimandArg::MleH => Estimand::MleH,
        },
        replications: args.reps,
        scaling_exponent: args.scaling,
        center: args.center,
        seed: args.seed,
        bins: args.bins,
    };
    let mut output = McOutput {
        sampling: None,
        coverage: None,
        runtime_ms: 0,
        config: &args,
    };
    match args.kind {
        Kind::Sampling => {
            let report = run_sampling_distribution(&spec)?;
            if let Some(path) = &args.out_hist {
                write_text(Some(path), &report.histogram.to_tsv())?;
            }
            output.sampling = Some(report);
        }
        Kind::Coverage => {
            let target = match args.target {
                TargetArg::H => CoverageTarget::Field,
                TargetArg::Beta => CoverageTarget::Beta,
            };
            let report = run_coverage(&spec, target, args.level)?;
            output.coverage = Some(CoverageSummary {
                coverage: report.coverage,
                level: report.level,
                replications: report.records.len(),
                degenerate: report.records.iter().filter(|r| r.degenerate).count(),
            });
        }
    }
    output.runtime_ms = start.elapsed().as_millis();
    write_json(args.out.as_deref(), &output)
}
