use std::path::PathBuf;

use clap::Args;
use ldpc_exponent_core::enumerators::EnsembleParams;
use ldpc_exponent_core::lab::{
    exact_block_error, mc_block_error, min_stopping_size, rng_stream, sample_graph, EXHAUSTIVE_MAX_N,
};
use rand::Rng;

use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::output::{emit, num, render_csv};

// Sampling attempts per requested code before expurgation gives up.
const MAX_ATTEMPTS_FACTOR: usize = 50;

#[derive(Args, Debug, Clone)]
pub struct SimulateArgs {
    #[arg(long)]
    pub c: u32,
    #[arg(long)]
    pub d: u32,
    /// Block lengths (comma-separated).
    #[arg(long = "N", alias = "n", value_delimiter = ',', required = true)]
    pub n: Vec<u32>,
    /// Erasure probabilities (comma-separated).
    #[arg(long, value_delimiter = ',', required = true)]
    pub delta: Vec<f64>,
    /// Monte Carlo erasure patterns per code.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Sampled codes per block length; p_e is their average.
    #[arg(long, default_value_t = 1)]
    pub codes: usize,
    /// Exhaustive evaluation over all erasure patterns (N <= 24).
    #[arg(long)]
    pub exact: bool,
    /// Reject codes with a nonempty stopping set of size <= gamma N.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &SimulateArgs) -> Result<(), CliError> {
    if args.exact {
        if let Some(&n) = args.n.iter().find(|&&n| n as usize > EXHAUSTIVE_MAX_N) {
            return Err(CliError::Resource(format!(
                "exact mode needs N <= {EXHAUSTIVE_MAX_N}, got N = {n}; drop --exact for Monte Carlo"
            )));
        }
    }
    if let Some(&d) = args.delta.iter().find(|d| !(0.0..=1.0).contains(*d)) {
        return Err(CliError::Usage(format!("delta = {d} outside [0, 1]")));
    }
    if args.codes == 0 || (!args.exact && args.trials == 0) {
        return Err(CliError::Usage("need at least one code and one trial".into()));
    }
    if let Some(g) = args.gamma {
        if !(0.0..1.0).contains(&g) {
            return Err(CliError::Usage(format!("gamma = {g} outside [0, 1)")));
        }
    }
    let mode = if args.exact { "exact" } else { "mc" };
    let mut manifest = RunManifest::new("simulate")
        .param("c", args.c)
        .param("d", args.d)
        .param("N", join(&args.n))
        .param("delta", join(&args.delta))
        .param("mode", mode)
        .param("codes", args.codes)
        .param("gamma", args.gamma.map_or("none".to_string(), |g| g.to_string()))
        .seed(args.seed);
    if !args.exact {
        manifest = manifest.param("trials", args.trials);
    }
    let mut rows = Vec::new();
    for &n in &args.n {
        let params = EnsembleParams::with_length(args.c, args.d, n)?;
        let graphs = sample_codes(&params, args)?;
        for &delta in &args.delta {
            let mut pes = Vec::with_capacity(graphs.len());
            let mut mc_se = 0.0;
            for (k, g) in graphs.iter().enumerate() {
                if args.exact {
                    pes.push(exact_block_error(g, delta)?);
                } else {
                    let m = mc_block_error(g, delta, args.trials, args.seed ^ ((n as u64) << 32) ^ k as u64)?;
                    mc_se = m.stderr;
                    pes.push(m.estimate);
                }
            }
            let (mean, se) = summarize(&pes, mc_se);
            rows.push(vec![
                n.to_string(),
                num(delta),
                num(mean),
                num(se),
                mode.to_string(),
                args.seed.to_string(),
            ]);
        }
    }
    let cols = ["N", "delta", "p_e", "stderr", "mode", "seed"];
    emit(args.out.as_deref(), &render_csv(&manifest, &cols, &rows)?)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

// With one code the Monte Carlo error is the only error; with several the
// spread across codes is reported.
fn summarize(pes: &[f64], single_se: f64) -> (f64, f64) {
    let k = pes.len() as f64;
    let mean = pes.iter().sum::<f64>() / k;
    if pes.len() == 1 {
        return (mean, single_se);
    }
    let var = pes.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

fn sample_codes(
    params: &EnsembleParams,
    args: &SimulateArgs,
) -> Result<Vec<ldpc_exponent_core::lab::BipartiteGraph>, CliError> {
    let n = params.block_length()?;
    let limit = args.gamma.map_or(0, |g| (g * n as f64).floor() as usize);
    let mut seeds = rng_stream(args.seed, n as u64);
    let mut out = Vec::with_capacity(args.codes);
    let mut sampled = 0;
    while out.len() < args.codes {
        if sampled >= args.codes * MAX_ATTEMPTS_FACTOR {
            return Err(CliError::Resource(format!(
                "only {} of {sampled} sampled codes survived expurgation at N = {n}",
                out.len()
            )));
        }
        sampled += 1;
        let g = sample_graph(params, seeds.random())?;
        if limit == 0 || min_stopping_size(&g, limit)?.is_none() {
            out.push(g);
        }
    }
    Ok(out)
}
