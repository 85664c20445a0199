//! Stopping-set probabilities and average spectra of the `(c, d)`-regular
//! socket ensemble: exact values at finite block length, their exponential
//! growth rates, and the expurgation threshold `alpha0`.
//!
//! Everything is reported in the log2 domain, with `-inf` standing for an
//! empty configuration class.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genfunc::{
    growth_rate_uni, pair_mask_poly, poly_power_table, single_mask_poly, tri_power_coeff, UniPoly,
};
use crate::numerics::{binomial, bisect_root, h2, log2_big, multinomial};
use crate::par;

/// Degrees and (optionally) block length of a regular ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleParams {
    /// Variable-node degree.
    pub c: u32,
    /// Check-node degree.
    pub d: u32,
    /// Block length (number of variable nodes).
    pub n: Option<u32>,
}

impl EnsembleParams {
    pub fn new(c: u32, d: u32) -> Result<Self> {
        if c < 2 || d <= c {
            return Err(Error::domain(format!(
                "need 2 <= c < d, got (c, d) = ({c}, {d})"
            )));
        }
        Ok(EnsembleParams { c, d, n: None })
    }

    pub fn with_length(c: u32, d: u32, n: u32) -> Result<Self> {
        let p = Self::new(c, d)?;
        if n == 0 || (n as u64 * c as u64) % d as u64 != 0 {
            return Err(Error::domain(format!(
                "block length {n} does not give an integral check count for ({c}, {d})"
            )));
        }
        Ok(EnsembleParams { n: Some(n), ..p })
    }

    /// Design rate `1 - c/d`.
    pub fn rate(&self) -> f64 {
        1.0 - self.c as f64 / self.d as f64
    }

    pub fn block_length(&self) -> Result<u32> {
        self.n
            .ok_or_else(|| Error::domain("operation requires a finite block length"))
    }

    /// Number of check nodes `N c / d`.
    pub fn checks(&self) -> Result<u32> {
        Ok(self.block_length()? * self.c / self.d)
    }

    /// Total number of edges (sockets per side) `N c`.
    pub fn edges(&self) -> Result<u32> {
        Ok(self.block_length()? * self.c)
    }
}

/// One point of a normalized spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub eta: f64,
    /// `(1/N) log2` of the average count.
    pub log_avg: f64,
}

/// An exact probability `num / den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ratio {
    pub num: BigUint,
    pub den: BigUint,
}

impl Ratio {
    pub fn log2(&self) -> f64 {
        log2_big(&self.num) - log2_big(&self.den)
    }

    pub fn to_f64(&self) -> f64 {
        self.log2().exp2()
    }

    /// Equality of the rationals by cross-multiplication.
    pub fn same_value(&self, other: &Ratio) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

/// Exact probability that a fixed set of `i` variable nodes is a stopping set.
pub fn p_s1_exact(i: u32, params: &EnsembleParams) -> Result<Ratio> {
    let n = params.block_length()?;
    if i > n {
        return Err(Error::domain(format!("set size {i} exceeds block length {n}")));
    }
    let beta = single_mask_poly(params.d)?;
    let k = (i * params.c) as usize;
    let table = poly_power_table(&beta, params.checks()?, k);
    Ok(Ratio {
        num: table[k].clone(),
        den: binomial(params.edges()? as u64, k as u64),
    })
}

/// `log2` of [`p_s1_exact`].
pub fn p_s1(i: u32, params: &EnsembleParams) -> Result<f64> {
    Ok(p_s1_exact(i, params)?.log2())
}

/// Exact probability that two fixed sets of sizes `i` and `j` with
/// intersection `k` are both stopping sets. Infeasible triples give zero.
pub fn p_s2_exact(i: u32, j: u32, k: u32, params: &EnsembleParams) -> Result<Ratio> {
    let n = params.block_length()?;
    if k > i.min(j) || i + j - k > n {
        return Ok(Ratio {
            num: BigUint::zero(),
            den: BigUint::from(1u32),
        });
    }
    let c = params.c;
    let key = ((i - k) * c, k * c, (j - k) * c);
    let b = pair_mask_poly(params.d)?;
    let num = tri_power_coeff(&b, params.checks()?, key);
    let den = multinomial(
        params.edges()? as u64,
        &[key.0 as u64, key.1 as u64, key.2 as u64],
    )?;
    Ok(Ratio { num, den })
}

/// `log2` of [`p_s2_exact`].
pub fn p_s2(i: u32, j: u32, k: u32, params: &EnsembleParams) -> Result<f64> {
    Ok(p_s2_exact(i, j, k, params)?.log2())
}

/// `log2` of the ensemble-average number of stopping sets of size `i`.
pub fn avg_spectrum(i: u32, params: &EnsembleParams) -> Result<f64> {
    let n = params.block_length()?;
    Ok(log2_big(&binomial(n as u64, i as u64)) + p_s1(i, params)?)
}

/// All of `log2 S_i` for `i = 0..=N`, sharing one power table.
pub fn avg_spectrum_table(params: &EnsembleParams) -> Result<Vec<f64>> {
    let n = params.block_length()?;
    let beta: UniPoly = single_mask_poly(params.d)?;
    let edges = params.edges()?;
    let table = poly_power_table(&beta, params.checks()?, edges as usize);
    Ok((0..=n)
        .map(|i| {
            let k = (i * params.c) as u64;
            log2_big(&binomial(n as u64, i as u64)) + log2_big(&table[k as usize])
                - log2_big(&binomial(edges as u64, k))
        })
        .collect())
}

/// `log2` of the ensemble-average number of ordered pairs `(S1, S2)` with
/// `|S1| = i`, `|S2| = j`, `|S1 ∩ S2| = k`.
pub fn avg_pair_spectrum(i: u32, j: u32, k: u32, params: &EnsembleParams) -> Result<f64> {
    let n = params.block_length()?;
    if k > i.min(j) || i + j - k > n {
        return Ok(f64::NEG_INFINITY);
    }
    let count = multinomial(n as u64, &[(i - k) as u64, k as u64, (j - k) as u64])?;
    Ok(log2_big(&count) + p_s2(i, j, k, params)?)
}

/// `lim (1/N) log2 S_{eta N}`:
/// `h(eta) - c h(eta) + (c/d) inf_x log2((1 + psi_2(x; d)) / x^{eta d})`.
pub fn growth_avg_spectrum(eta: f64, c: u32, d: u32) -> Result<f64> {
    if !(0.0..1.0).contains(&eta) {
        return Err(Error::domain(format!("eta = {eta} outside [0, 1)")));
    }
    if eta == 0.0 {
        return Ok(0.0);
    }
    let beta = single_mask_poly(d)?;
    let inf = growth_rate_uni(&beta, eta * d as f64)?.value;
    Ok((1.0 - c as f64) * h2(eta) + c as f64 / d as f64 * inf)
}

/// Expurgation threshold and the sign-change bracket that located it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha0 {
    pub value: f64,
    /// Scan points on either side of the crossing.
    pub bracket: (f64, f64),
    /// `false` when the growth rate never goes negative near zero; `value`
    /// is then 0.
    pub found: bool,
}

const ALPHA0_SCAN_POINTS: usize = 10_000;
const ALPHA0_SCAN_MAX: f64 = 0.5;

/// Smallest `eta > 0` at which the average-spectrum growth rate turns
/// non-negative; stopping sets below `alpha0 N` are exponentially rare.
pub fn alpha0(c: u32, d: u32) -> Result<Alpha0> {
    EnsembleParams::new(c, d)?;
    if c <= 2 {
        return Err(Error::Unsupported(format!(
            "expurgation threshold is undefined for c = {c} <= 2"
        )));
    }
    let step = ALPHA0_SCAN_MAX / ALPHA0_SCAN_POINTS as f64;
    let g = |eta: f64| growth_avg_spectrum(eta, c, d);
    let values = par::map_range(ALPHA0_SCAN_POINTS, |k| g(step * (k + 1) as f64));
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    if values[0] >= 0.0 {
        return Ok(Alpha0 {
            value: 0.0,
            bracket: (0.0, step),
            found: false,
        });
    }
    let Some(k) = values.iter().position(|&v| v >= 0.0) else {
        return Ok(Alpha0 {
            value: 0.0,
            bracket: (0.0, ALPHA0_SCAN_MAX),
            found: false,
        });
    };
    let lo = step * k as f64;
    let hi = step * (k + 1) as f64;
    let root = bisect_root(|eta| g(eta).unwrap_or(f64::NAN), (lo, hi), 1e-12, 200)?;
    Ok(Alpha0 {
        value: root,
        bracket: (lo, hi),
        found: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(c: u32, d: u32, n: u32) -> EnsembleParams {
        EnsembleParams::with_length(c, d, n).unwrap()
    }

    // Brute force: every placement of the i*c sockets of a fixed set onto
    // distinct check sockets, up to ordering within the set (i.e. subsets of
    // check sockets), counting those where no check holds exactly one.
    fn brute_p_s1(i: u32, p: &EnsembleParams) -> (u64, u64) {
        let e = p.edges().unwrap();
        let k = i * p.c;
        let (mut good, mut total) = (0u64, 0u64);
        for mask in 0u64..(1 << e) {
            if mask.count_ones() != k {
                continue;
            }
            total += 1;
            let ok = (0..p.checks().unwrap()).all(|chk| {
                let hits = (0..p.d).filter(|s| mask >> (chk * p.d + s) & 1 == 1).count();
                hits != 1
            });
            good += ok as u64;
        }
        (good, total)
    }

    #[test]
    fn params_validation() {
        assert!(EnsembleParams::new(2, 2).is_err());
        assert!(EnsembleParams::new(1, 4).is_err());
        assert!(EnsembleParams::with_length(3, 6, 5).is_err());
        let p = params(3, 6, 10);
        assert_eq!(p.checks().unwrap(), 5);
        assert!((p.rate() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn p_s1_examples() {
        let p = params(2, 4, 4);
        let r = p_s1_exact(1, &p).unwrap();
        assert!(r.same_value(&Ratio {
            num: 3u32.into(),
            den: 7u32.into()
        }));
        assert!((p_s1(1, &p).unwrap() - (3.0f64 / 7.0).log2()).abs() < 1e-12);
        assert_eq!(p_s1(0, &p).unwrap(), 0.0);
    }

    #[test]
    fn p_s1_matches_placement_enumeration() {
        for (c, d, n) in [(2, 4, 4), (3, 6, 4), (2, 3, 6)] {
            let p = params(c, d, n);
            for i in 0..=n {
                let (good, total) = brute_p_s1(i, &p);
                let r = p_s1_exact(i, &p).unwrap();
                assert!(
                    r.same_value(&Ratio {
                        num: good.into(),
                        den: total.into()
                    }),
                    "({c},{d},{n}) i={i}"
                );
            }
        }
    }

    #[test]
    fn p_s2_reduces_to_p_s1() {
        let p = params(3, 6, 6);
        for i in 0..=6 {
            let s1 = p_s1_exact(i, &p).unwrap();
            assert!(p_s2_exact(i, i, i, &p).unwrap().same_value(&s1), "i={i}");
            assert!(p_s2_exact(i, 0, 0, &p).unwrap().same_value(&s1), "i={i}");
        }
    }

    #[test]
    fn infeasible_pairs_are_empty() {
        let p = params(2, 4, 4);
        assert_eq!(avg_pair_spectrum(1, 1, 2, &p).unwrap(), f64::NEG_INFINITY);
        assert_eq!(avg_pair_spectrum(3, 3, 1, &p).unwrap(), f64::NEG_INFINITY);
        assert_eq!(p_s2(3, 3, 1, &p).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn probabilities_are_at_most_one() {
        let p = params(3, 6, 6);
        for i in 0..=6 {
            for j in 0..=6 {
                for k in 0..=i.min(j) {
                    assert!(p_s2(i, j, k, &p).unwrap() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn avg_spectrum_examples() {
        let p = params(2, 4, 4);
        assert_eq!(avg_spectrum(0, &p).unwrap(), 0.0);
        assert!((avg_spectrum(1, &p).unwrap() - (12.0f64 / 7.0).log2()).abs() < 1e-12);
        let table = avg_spectrum_table(&p).unwrap();
        for i in 0..=4 {
            assert!((table[i as usize] - avg_spectrum(i, &p).unwrap()).abs() < 1e-12);
        }
        assert!(
            (avg_pair_spectrum(2, 2, 2, &p).unwrap() - avg_spectrum(2, &p).unwrap()).abs() < 1e-12
        );
    }

    #[test]
    fn growth_matches_finite_length() {
        assert_eq!(growth_avg_spectrum(0.0, 3, 6).unwrap(), 0.0);
        assert!(growth_avg_spectrum(1.0, 3, 6).is_err());
        let n = 240;
        let p = params(3, 6, n);
        let exact = avg_spectrum(n / 2, &p).unwrap() / n as f64;
        let g = growth_avg_spectrum(0.5, 3, 6).unwrap();
        assert!((exact - g).abs() < 0.03, "{exact} vs {g}");
    }

    #[test]
    fn no_expurgation_gain_at_c2() {
        for k in 1..50 {
            let eta = k as f64 * 0.002;
            assert!(growth_avg_spectrum(eta, 2, 4).unwrap() >= 0.0, "eta = {eta}");
        }
        assert!(matches!(alpha0(2, 4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn infimum_term_is_nonnegative_and_increasing() {
        let (c, d) = (4u32, 8u32);
        let mut prev = 0.0;
        for k in 1..50 {
            let eta = k as f64 * 0.01;
            let term = growth_avg_spectrum(eta, c, d).unwrap() - (1.0 - c as f64) * h2(eta);
            assert!(term >= 0.0 && term >= prev, "eta = {eta}");
            prev = term;
        }
    }

    #[test]
    fn alpha0_sign_change() {
        for (c, d) in [(3, 6), (4, 8)] {
            let a = alpha0(c, d).unwrap();
            assert!(a.found && a.value > 0.0);
            assert!(growth_avg_spectrum(a.value - 1e-3, c, d).unwrap() < 0.0);
            assert!(growth_avg_spectrum(a.value + 1e-3, c, d).unwrap() > 0.0);
            assert!(growth_avg_spectrum(a.value / 2.0, c, d).unwrap() < 0.0);
        }
    }
}
