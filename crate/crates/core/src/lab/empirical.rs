use rand::Rng;

use super::block_error::{exact_block_error, mc_block_error};
use super::graph::{rng_stream, sample_graph};
use super::stopping::{min_stopping_size, EXHAUSTIVE_MAX_N};
use crate::enumerators::EnsembleParams;
use crate::error::{Error, Result};
use crate::par;

/// How each sampled code's error probability is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Exhaustive over all erasure patterns (N <= 24).
    Exact,
    MonteCarlo { trials: u64 },
}

impl EvalMode {
    pub fn name(&self) -> &'static str {
        match self {
            EvalMode::Exact => "exact",
            EvalMode::MonteCarlo { .. } => "mc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalConfig {
    pub delta: f64,
    /// Codes with a nonempty stopping set of size `<= gamma N` are
    /// rejected; `None` disables expurgation.
    pub gamma: Option<f64>,
    /// Accepted codes per block length.
    pub codes: usize,
    pub seed: u64,
    pub mode: EvalMode,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalRow {
    pub n: u32,
    pub sampled: usize,
    pub accepted: usize,
    /// Estimate of the probability that a code survives expurgation.
    pub acceptance_rate: f64,
    /// Ensemble-average block error probability of accepted codes.
    pub mean_pe: f64,
    pub stderr: f64,
    /// `-(1/N) log2 mean_pe`.
    pub exponent: f64,
    /// Exponent range for `mean_pe +- 2 stderr`.
    pub exponent_lo: f64,
    pub exponent_hi: f64,
}

// Sampling attempts per requested code before giving up.
const MAX_ATTEMPTS_FACTOR: usize = 50;

/// Finite-length exponent estimates of the (optionally expurgated)
/// ensemble, one row per block length.
pub fn empirical_exponent(c: u32, d: u32, n_list: &[u32], cfg: &EmpiricalConfig) -> Result<Vec<EmpiricalRow>> {
    if !(cfg.delta > 0.0 && cfg.delta < 1.0) {
        return Err(Error::domain(format!("delta = {} outside (0, 1)", cfg.delta)));
    }
    if cfg.codes == 0 {
        return Err(Error::domain("need at least one code per block length"));
    }
    n_list.iter().map(|&n| empirical_row(c, d, n, cfg)).collect()
}

fn empirical_row(c: u32, d: u32, n: u32, cfg: &EmpiricalConfig) -> Result<EmpiricalRow> {
    let params = EnsembleParams::with_length(c, d, n)?;
    if cfg.mode == EvalMode::Exact && n as usize > EXHAUSTIVE_MAX_N {
        return Err(Error::Resource(format!(
            "exact evaluation needs N <= {EXHAUSTIVE_MAX_N}, got {n}"
        )));
    }
    let limit = cfg.gamma.map_or(0, |g| (g * n as f64).floor() as usize);
    let mut seeds = rng_stream(cfg.seed, n as u64);
    let mut accepted = Vec::with_capacity(cfg.codes);
    let mut sampled = 0;
    while accepted.len() < cfg.codes {
        if sampled >= cfg.codes * MAX_ATTEMPTS_FACTOR {
            return Err(Error::Resource(format!(
                "only {} of {sampled} codes survived expurgation at N = {n}",
                accepted.len()
            )));
        }
        sampled += 1;
        let g = sample_graph(&params, seeds.random())?;
        if limit == 0 || min_stopping_size(&g, limit)?.is_none() {
            accepted.push(g);
        }
    }
    let pes = par::map(&accepted, |g| match cfg.mode {
        EvalMode::Exact => exact_block_error(g, cfg.delta),
        EvalMode::MonteCarlo { trials } => {
            mc_block_error(g, cfg.delta, trials, cfg.seed ^ n as u64).map(|m| m.estimate)
        }
    });
    let pes = pes.into_iter().collect::<Result<Vec<_>>>()?;
    let k = pes.len() as f64;
    let mean = pes.iter().sum::<f64>() / k;
    let var = if pes.len() > 1 {
        pes.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (k - 1.0)
    } else {
        0.0
    };
    let stderr = (var / k).sqrt();
    let expo = |p: f64| if p > 0.0 { -p.log2() / n as f64 } else { f64::INFINITY };
    Ok(EmpiricalRow {
        n,
        sampled,
        accepted: accepted.len(),
        acceptance_rate: accepted.len() as f64 / sampled as f64,
        mean_pe: mean,
        stderr,
        exponent: expo(mean),
        exponent_lo: expo(mean + 2.0 * stderr),
        exponent_hi: expo(mean - 2.0 * stderr),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run() {
        let cfg = EmpiricalConfig {
            delta: 0.1,
            gamma: Some(0.2),
            codes: 6,
            seed: 3,
            mode: EvalMode::Exact,
        };
        let rows = empirical_exponent(3, 6, &[8, 12], &cfg).unwrap();
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert!(r.exponent.is_finite() && r.exponent > 0.0);
            assert!(r.exponent_lo <= r.exponent && r.exponent <= r.exponent_hi);
            assert!(r.acceptance_rate > 0.0 && r.acceptance_rate <= 1.0);
            assert_eq!(r.accepted, 6);
        }
        assert_eq!(rows, empirical_exponent(3, 6, &[8, 12], &cfg).unwrap());
    }

    #[test]
    fn exact_mode_resource_limit() {
        let cfg = EmpiricalConfig {
            delta: 0.1,
            gamma: None,
            codes: 1,
            seed: 0,
            mode: EvalMode::Exact,
        };
        assert!(matches!(empirical_exponent(3, 6, &[26], &cfg), Err(Error::Resource(_))));
        let mc = EmpiricalConfig {
            mode: EvalMode::MonteCarlo { trials: 2000 },
            ..cfg
        };
        let rows = empirical_exponent(3, 6, &[26], &mc).unwrap();
        assert_eq!(rows[0].n, 26);
    }
}
