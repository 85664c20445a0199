use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumerators::EnsembleParams;
use crate::error::{Error, Result};

/// Identifier of the generator behind every seeded stream in this crate.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Generator for `(seed, stream)`; streams are independent substreams of
/// the same key.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A Tanner graph from the socket ensemble. Variable socket `s` belongs to
/// variable `s / c`, check socket `t` to check `t / d`, and `perm[s] = t`.
/// Parallel edges are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    params: EnsembleParams,
    perm: Vec<u32>,
    var_checks: Vec<Vec<u32>>,
    check_vars: Vec<Vec<u32>>,
}

impl BipartiteGraph {
    pub fn from_permutation(params: &EnsembleParams, perm: Vec<u32>) -> Result<Self> {
        let n = params.block_length()? as usize;
        let (c, d) = (params.c as usize, params.d as usize);
        let edges = n * c;
        if perm.len() != edges {
            return Err(Error::domain(format!("permutation has length {}, expected {edges}", perm.len())));
        }
        let mut seen = vec![false; edges];
        for &t in &perm {
            let t = t as usize;
            if t >= edges || seen[t] {
                return Err(Error::domain("socket map is not a permutation"));
            }
            seen[t] = true;
        }
        let m = edges / d;
        let mut var_checks = vec![Vec::with_capacity(c); n];
        let mut check_vars = vec![Vec::with_capacity(d); m];
        for (s, &t) in perm.iter().enumerate() {
            let (v, ch) = (s / c, t as usize / d);
            var_checks[v].push(ch as u32);
            check_vars[ch].push(v as u32);
        }
        Ok(BipartiteGraph {
            params: *params,
            perm,
            var_checks,
            check_vars,
        })
    }

    pub fn params(&self) -> &EnsembleParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.var_checks.len()
    }

    pub fn num_checks(&self) -> usize {
        self.check_vars.len()
    }

    pub fn permutation(&self) -> &[u32] {
        &self.perm
    }

    /// Checks of variable `v`, one entry per edge.
    pub fn var_checks(&self, v: usize) -> &[u32] {
        &self.var_checks[v]
    }

    /// Variables of check `ch`, one entry per edge.
    pub fn check_vars(&self, ch: usize) -> &[u32] {
        &self.check_vars[ch]
    }
}

/// Uniform draw from the socket ensemble, deterministic in `seed`.
pub fn sample_graph(params: &EnsembleParams, seed: u64) -> Result<BipartiteGraph> {
    let n = params.block_length()?;
    if (n as u64 * params.c as u64) % params.d as u64 != 0 {
        return Err(Error::domain("N c must be divisible by d"));
    }
    let mut perm: Vec<u32> = (0..n * params.c).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    BipartiteGraph::from_permutation(params, perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p244() -> EnsembleParams {
        EnsembleParams::with_length(2, 4, 4).unwrap()
    }

    #[test]
    fn degrees_are_exact() {
        let g = sample_graph(&p244(), 1).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.num_checks(), 2);
        assert!((0..4).all(|v| g.var_checks(v).len() == 2));
        assert!((0..2).all(|c| g.check_vars(c).len() == 4));
        let g = sample_graph(&EnsembleParams::with_length(3, 6, 24).unwrap(), 9).unwrap();
        assert!((0..24).all(|v| g.var_checks(v).len() == 3));
        assert!((0..12).all(|c| g.check_vars(c).len() == 6));
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_graph(&p244(), 77).unwrap();
        let b = sample_graph(&p244(), 77).unwrap();
        assert_eq!(a.permutation(), b.permutation());
        assert!((0..20).any(|s| sample_graph(&p244(), s).unwrap().permutation() != a.permutation()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(sample_graph(&EnsembleParams::new(2, 4).unwrap(), 0).is_err());
        assert!(BipartiteGraph::from_permutation(&p244(), vec![0, 1, 2, 3, 4, 5, 6, 6]).is_err());
        assert!(BipartiteGraph::from_permutation(&p244(), vec![0, 1, 2]).is_err());
    }

    #[test]
    fn socket_image_is_uniform() {
        let p = p244();
        let trials = 10_000;
        let mut counts = [0u32; 8];
        for s in 0..trials {
            counts[sample_graph(&p, s).unwrap().permutation()[0] as usize] += 1;
        }
        let expect = trials as f64 / 8.0;
        let chi2: f64 = counts.iter().map(|&k| (k as f64 - expect).powi(2) / expect).sum();
        // 0.999 quantile of chi-square with 7 degrees of freedom
        assert!(chi2 < 24.322, "chi2 = {chi2}, counts {counts:?}");
    }
}
