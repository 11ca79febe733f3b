//! `tising`: sampling, estimation, thresholds, phase diagrams, goodness of
//! fit and Monte-Carlo experiments for p-tensor Ising models. Every run is
//! a pure function of (input files, flags, seed); results go to JSON, array
//! data to TSV or plain text.

mod commands;
mod output;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "tising", version, about = "p-tensor Ising model inference")]
struct Cli {
    /// Worker threads for replicated experiments (0 = all cores).
    /// The ISING_THREADS environment variable overrides this flag.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw spin configurations (or exact magnetizations) from a model
    Sample(commands::sample::SampleArgs),
    /// Point estimation: ML (Curie-Weiss), MPLE, penalized MPLE
    Estimate(commands::estimate::EstimateArgs),
    /// Phase-transition thresholds from the variational problem
    Threshold(commands::threshold::ThresholdArgs),
    /// Classify a (beta, h) grid and emit the phase diagram as TSV
    Phasediagram(commands::phase::PhaseArgs),
    /// Simulation goodness-of-fit test for a fitted model
    Gof(commands::gof::GofArgs),
    /// Replicated Monte-Carlo experiments (sampling law, CI coverage)
    Mc(commands::mc::McArgs),
}

fn main() {
    let cli = Cli::parse();
    let threads = std::env::var("ISING_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(cli.threads);
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    let result = match cli.command {
        Command::Sample(args) => commands::sample::run(args),
        Command::Estimate(args) => commands::estimate::run(args),
        Command::Threshold(args) => commands::threshold::run(args),
        Command::Phasediagram(args) => commands::phase::run(args),
        Command::Gof(args) => commands::gof::run(args),
        Command::Mc(args) => commands::mc::run(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
