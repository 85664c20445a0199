use rand::Rng;

use super::graph::{rng_stream, BipartiteGraph};
use super::stopping::{failure_counts, Peeler};
use crate::error::{Error, Result};
use crate::par;

/// Monte Carlo trials per RNG substream.
pub const MC_BLOCK: u64 = 4096;

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain(format!("delta = {delta} outside [0, 1]")));
    }
    Ok(())
}

/// Block error probability of peeling on the BEC, summed exactly over all
/// 2^N erasure patterns.
pub fn exact_block_error(graph: &BipartiteGraph, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(block_error_from_counts(&failure_counts(graph)?, delta))
}

/// `sum_l counts[l] delta^l (1 - delta)^{N - l}` with `N = counts.len() - 1`.
pub fn block_error_from_counts(counts: &[u64], delta: f64) -> f64 {
    let n = counts.len() as i32 - 1;
    counts
        .iter()
        .enumerate()
        .filter(|&(_, &k)| k > 0)
        .map(|(l, &k)| k as f64 * delta.powi(l as i32) * (1.0 - delta).powi(n - l as i32))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    /// Binomial standard error of the estimate.
    pub stderr: f64,
    pub failures: u64,
    pub trials: u64,
}

/// Monte Carlo estimate of the block error probability. Trials are split
/// into blocks of [`MC_BLOCK`], block `b` drawing from substream `b` of
/// `seed`, so the result does not depend on the worker count.
pub fn mc_block_error(graph: &BipartiteGraph, delta: f64, trials: u64, seed: u64) -> Result<McEstimate> {
    check_delta(delta)?;
    if trials == 0 {
        return Err(Error::domain("need at least one trial"));
    }
    let blocks = trials.div_ceil(MC_BLOCK);
    let per_block = par::map_range(blocks as usize, |b| {
        let b = b as u64;
        let count = MC_BLOCK.min(trials - b * MC_BLOCK);
        let mut rng = rng_stream(seed, b);
        let mut peeler = Peeler::new(graph);
        let mut pattern = vec![false; graph.n()];
        let mut failures = 0u64;
        for _ in 0..count {
            for e in pattern.iter_mut() {
                *e = rng.random_bool(delta);
            }
            if peeler.run(pattern.iter().copied()) > 0 {
                failures += 1;
            }
        }
        failures
    });
    let failures: u64 = per_block.iter().sum();
    let p = failures as f64 / trials as f64;
    Ok(McEstimate {
        estimate: p,
        stderr: (p * (1.0 - p) / trials as f64).sqrt(),
        failures,
        trials,
    })
}
