//! `tising sample`: draw spin configurations from a model by Gibbs
//! sampling, or exact magnetizations from the Curie-Weiss law.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;

use crate::output::{write_json, write_text, AnyError};
use tensor_ising::models::{gen_hsbm, gen_partite, gen_sk, HsbmSpec};
use tensor_ising::rng::{fan_out, rng_from_seed};
use tensor_ising::tensor::{GibbsChain, Model, SpinVector};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Cw,
    Sk,
    Er,
    Hsbm,
    Partite,
    File,
}

#[derive(Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct SampleArgs {
    #[arg(long, value_enum)]
    model: ModelKind,
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    h: f64,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability for er/partite models
    #[arg(long, default_value_t = 1.0)]
    theta: f64,
    /// HSBM spec file (model = hsbm)
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Comma-separated part sizes (model = partite)
    #[arg(long)]
    sizes: Option<String>,
    /// Hyperedge model file (model = file)
    #[arg(long)]
    edge_file: Option<PathBuf>,
    /// Seed for the random model itself (defaults to --seed)
    #[arg(long)]
    model_seed: Option<u64>,
    /// Burn-in sweeps before the first sample
    #[arg(long, default_value_t = 1000)]
    sweeps: usize,
    /// Sweeps between consecutive samples
    #[arg(long, default_value_t = 5)]
    thin: usize,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit exact magnetization draws instead of spin rows (cw only)
    #[arg(long, default_value_t = false)]
    magnetizations: bool,
    /// Output path for the sample matrix; metadata goes to <out>.json
    #[arg(long)]
    out: PathBuf,
}

#[derive(Serialize)]
struct SampleMeta<'a> {
    method: &'a str,
    rows: usize,
    columns: usize,
    runtime_ms: u128,
    config: &'a SampleArgs,
}

pub fn run(args: SampleArgs) -> Result<(), AnyError> {
    let start = Instant::now();
    let need = |v: Option<u32>, name: &str| -> Result<u32, AnyError> {
        v.ok_or_else(|| format!("--{name} is required for this model").into())
    };

    // Exact path: magnetization draws from the closed-form law.
    if args.magnetizations {
        if args.model != ModelKind::Cw {
            return Err("--magnetizations requires --model cw".into());
        }
        let p = need(args.p, "p")?;
        let n = args.n.ok_or("--n is required")?;
        let spec = tensor_ising::cw::CwSpec::new(args.beta, args.h, p, n)?;
        let draws = tensor_ising::cw::sample_magnetization(&spec, args.count, args.seed);
        let mut text = String::new();
        for d in draws {
            text.push_str(&format!("{d}\n"));
        }
        write_text(Some(&args.out), &text)?;
        let meta = SampleMeta {
            method: "exact-pmf",
            rows: args.count,
            columns: 1,
            runtime_ms: start.elapsed().as_millis(),
            config: &args,
        };
        return write_json(Some(&args.out.with_extension("json")), &meta);
    }

    let model_seed = args.model_seed.unwrap_or(args.seed);
    let model: Model = match args.model {
        ModelKind::Cw => {
            super::dense_cw_model(need(args.p, "p")?, args.n.ok_or("--n is required")?)?
        }
        ModelKind::Sk => Model::Sparse(gen_sk(
            need(args.p, "p")?,
            args.n.ok_or("--n is required")?,
            model_seed,
        )?),
        ModelKind::Er => {
            let spec = HsbmSpec::erdos_renyi(need(args.p, "p")?, args.theta)?;
            Model::Sparse(gen_hsbm(&spec, args.n.ok_or("--n is required")?, model_seed)?)
        }
        ModelKind::Hsbm => {
            let path = args.spec.as_ref().ok_or("--spec is required for hsbm")?;
            let spec = HsbmSpec::parse(&crate::output::read_file(path)?)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            Model::Sparse(gen_hsbm(&spec, args.n.ok_or("--n is required")?, model_seed)?)
        }
        ModelKind::Partite => {
            let sizes: Vec<usize> = args
                .sizes
                .as_ref()
                .ok_or("--sizes is required for partite")?
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| format!("bad --sizes: {e}"))?;
            let p = sizes.len() as u32;
            Model::Sparse(gen_partite(p, &sizes, args.theta, model_seed)?)
        }
        ModelKind::File => {
            let path = args.edge_file.as_ref().ok_or("--edge-file is required")?;
            Model::Sparse(super::load_model_file(path)?)
        }
    };

    // One chain: burn-in once, then thinned samples.
    let n = model.size();
    let h_field = if args.h == 0.0 {
        None
    } else {
        Some(vec![args.h; n])
    };
    let mut rng = rng_from_seed(fan_out(args.seed, 0));
    let x0 = SpinVector::random(n, &mut rng);
    let mut chain = GibbsChain::new(&model, args.beta, h_field, x0)?;
    chain.run(args.sweeps, &mut rng);
    let mut text = String::with_capacity(args.count * (2 * n + 1));
    for _ in 0..args.count {
        chain.run(args.thin, &mut rng);
        text.push_str(&chain.state().to_line());
        text.push('\n');
    }
    write_text(Some(&args.out), &text)?;
    let meta = SampleMeta {
        method: "gibbs",
        rows: args.count,
        columns: n,
        runtime_ms: start.elapsed().as_millis(),
        config: &args,
    };
    write_json(Some(&args.out.with_extension("json")), &meta)
}
