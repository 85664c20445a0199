//! Enumeration polynomials with exact integer coefficients, coefficient
//! extraction from their powers, and asymptotic coefficient growth rates.
//!
//! A growth rate is `inf over the positive orthant of log2(p / x^a y^b z^e)`,
//! the exponential rate of `[x^{a n} y^{b n} z^{e n}] p^n`. The infimum is
//! computed in log-coordinates, where `log p(e^t)` is a log-sum-exp of affine
//! functions and therefore convex.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{binomial, log2_big, minimize_convex_1d, multinomial, Boundary};

/// Univariate polynomial with non-negative integer coefficients; `coeffs[l]`
/// multiplies `x^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigUint>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// `1 + self`.
    pub fn one_plus(&self) -> UniPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(BigUint::zero());
        }
        coeffs[0] += 1u32;
        UniPoly::new(coeffs)
    }

    /// Floating-point evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::INFINITY))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(l, c)| c * BigUint::from(l))
                .collect(),
        )
    }

    // (exponent, ln coefficient) pairs for log-sum-exp evaluation.
    fn log_terms(&self) -> Vec<(f64, f64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l as f64, log2_big(c) * LN_2))
            .collect()
    }
}

/// Exponent triple `(a, b, e)` of the monomial `x^a y^b z^e`.
pub type Key = (u32, u32, u32);

/// Trivariate polynomial with non-negative integer coefficients and total
/// degree at most `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriPoly {
    d: u32,
    terms: BTreeMap<Key, BigUint>,
}

impl TriPoly {
    pub fn new(d: u32, terms: BTreeMap<Key, BigUint>) -> Result<Self> {
        let mut clean = BTreeMap::new();
        for (k, c) in terms {
            if k.0 + k.1 + k.2 > d {
                return Err(Error::domain(format!("term {k:?} exceeds degree bound {d}")));
            }
            if !c.is_zero() {
                clean.insert(k, c);
            }
        }
        Ok(TriPoly { d, terms: clean })
    }

    /// Product `p(x) q(y) r(z)` of three univariate polynomials.
    pub fn separable(p: &UniPoly, q: &UniPoly, r: &UniPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (a, ca) in p.coeffs.iter().enumerate() {
            for (b, cb) in q.coeffs.iter().enumerate() {
                for (e, ce) in r.coeffs.iter().enumerate() {
                    let c = ca * cb * ce;
                    if !c.is_zero() {
                        terms.insert((a as u32, b as u32, e as u32), c);
                    }
                }
            }
        }
        let d = [p, q, r].iter().map(|u| u.degree().unwrap_or(0)).sum::<usize>() as u32;
        TriPoly { d, terms }
    }

    pub fn degree_bound(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Key, BigUint> {
        &self.terms
    }

    pub fn coeff(&self, key: Key) -> BigUint {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    /// Sum of all coefficients, i.e. the value at `(1, 1, 1)`.
    pub fn coeff_sum(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Keeps only the terms where the given variables (by index) have
    /// exponent zero, i.e. substitutes `0` for those variables.
    pub fn set_zero(&self, vars: &[usize]) -> TriPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| {
                let e = [k.0, k.1, k.2];
                vars.iter().all(|&v| e[v] == 0)
            })
            .map(|(k, c)| (*k, c.clone()))
            .collect();
        TriPoly { d: self.d, terms }
    }

    /// The univariate polynomial in variable `var` obtained by setting the
    /// other two variables to zero.
    pub fn axis(&self, var: usize) -> UniPoly {
        let mut coeffs = vec![BigUint::zero(); self.d as usize + 1];
        for (k, c) in &self.terms {
            let e = [k.0, k.1, k.2];
            if (0..3).all(|v| v == var || e[v] == 0) {
                coeffs[e[var] as usize] += c;
            }
        }
        UniPoly::new(coeffs)
    }

    /// Swaps the roles of `x` and `z`.
    pub fn swap_xz(&self) -> TriPoly {
        TriPoly {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| ((k.2, k.1, k.0), c.clone()))
                .collect(),
        }
    }

    /// Floating-point evaluation.
    pub fn eval(&self, p: [f64; 3]) -> f64 {
        self.float_terms()
            .iter()
            .map(|t| t.coeff * p[0].powi(t.exp[0] as i32) * p[1].powi(t.exp[1] as i32) * p[2].powi(t.exp[2] as i32))
            .sum()
    }

    pub(crate) fn float_terms(&self) -> Vec<FloatTerm> {
        self.terms
            .iter()
            .map(|(k, c)| FloatTerm {
                exp: [k.0, k.1, k.2],
                coeff: c.to_f64().unwrap_or(f64::INFINITY),
                ln_coeff: log2_big(c) * LN_2,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct FloatTerm {
    pub exp: [u32; 3],
    pub coeff: f64,
    pub ln_coeff: f64,
}

/// `psi_i(x; d) = sum_{l >= i} C(d, l) x^l`.
pub fn psi(i: u32, d: u32) -> Result<UniPoly> {
    if d < 1 || i > d + 1 {
        return Err(Error::domain(format!("psi requires d >= 1 and i <= d + 1, got i={i}, d={d}")));
    }
    Ok(UniPoly::new(
        (0..=d)
            .map(|l| {
                if l >= i {
                    binomial(d as u64, l as u64)
                } else {
                    BigUint::zero()
                }
            })
            .collect(),
    ))
}

/// `1 + psi_2(x; d)`: the per-check enumerator of a single stopping set.
pub fn single_mask_poly(d: u32) -> Result<UniPoly> {
    Ok(psi(2, d)?.one_plus())
}

/// Whether a check node receiving `a` edges from `S1 \ S2`, `b` from
/// `S1 ∩ S2` and `e` from `S2 \ S1` keeps both `S1` and `S2` stopping sets.
pub fn mask_allows(a: u32, b: u32, e: u32, d: u32) -> bool {
    debug_assert!(a + b + e <= d);
    match b {
        0 => (a == 0 || a >= 2) && (e == 0 || e >= 2),
        1 => a >= 1 && e >= 1,
        _ => true,
    }
}

/// The pair enumerator `B(x, y, z; d)`: coefficient of `x^a y^b z^e` is the
/// multinomial `C(d; a, b, e)` when [`mask_allows`] accepts `(a, b, e)`.
pub fn pair_mask_poly(d: u32) -> Result<TriPoly> {
    pair_poly_with(d, mask_allows)
}

/// Builds a pair enumerator from an arbitrary per-check predicate.
pub fn pair_poly_with(d: u32, allows: impl Fn(u32, u32, u32, u32) -> bool) -> Result<TriPoly> {
    if d < 2 {
        return Err(Error::domain(format!("pair enumerator requires d >= 2, got {d}")));
    }
    let mut terms = BTreeMap::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for e in 0..=d - a - b {
                if allows(a, b, e, d) {
                    terms.insert((a, b, e), multinomial(d as u64, &[a as u64, b as u64, e as u64])?);
                }
            }
        }
    }
    TriPoly::new(d, terms)
}

/// Coefficients `[x^0 .. x^k]` of `p^power`, truncating every intermediate
/// product at degree `k`.
pub fn poly_power_table(p: &UniPoly, power: u32, k: usize) -> Vec<BigUint> {
    let mut acc = vec![BigUint::zero(); k + 1];
    acc[0] = BigUint::from(1u32);
    let pc: Vec<(usize, &BigUint)> = p
        .coeffs
        .iter()
        .enumerate()
        .filter(|(l, c)| *l <= k && !c.is_zero())
        .collect();
    for step in 0..power {
        let reach = (p.coeffs.len().saturating_sub(1) * step as usize).min(k);
        let mut next = vec![BigUint::zero(); k + 1];
        for (i, a) in acc.iter().enumerate().take(reach + 1) {
            if a.is_zero() {
                continue;
            }
            for &(l, c) in &pc {
                if i + l > k {
                    break;
                }
                next[i + l] += a * c;
            }
        }
        acc = next;
    }
    acc
}

/// Exact `[x^k] p(x)^power`.
pub fn poly_power_coeff(p: &UniPoly, power: u32, k: usize) -> BigUint {
    if k > p.degree().unwrap_or(0) * power as usize {
        return BigUint::zero();
    }
    poly_power_table(p, power, k).swap_remove(k)
}

/// Exact `[x^a y^b z^e] p^power`, truncating intermediate products at the
/// target componentwise and skipping states that can no longer reach it.
pub fn tri_power_coeff(p: &TriPoly, power: u32, key: Key) -> BigUint {
    let (ka, kb, ke) = (key.0 as usize, key.1 as usize, key.2 as usize);
    let d = p.d as usize;
    let total = ka + kb + ke;
    if total > d * power as usize {
        return BigUint::zero();
    }
    let dims = (ka + 1, kb + 1, ke + 1);
    let idx = |a: usize, b: usize, e: usize| (a * dims.1 + b) * dims.2 + e;
    let terms: Vec<([usize; 3], &BigUint)> = p
        .terms
        .iter()
        .map(|(k, c)| ([k.0 as usize, k.1 as usize, k.2 as usize], c))
        .filter(|(k, _)| k[0] <= ka && k[1] <= kb && k[2] <= ke)
        .collect();
    let mut acc = vec![BigUint::zero(); dims.0 * dims.1 * dims.2];
    acc[0] = BigUint::from(1u32);
    for step in 0..power as usize {
        let remaining = power as usize - step - 1;
        let lo_total = total.saturating_sub(d * remaining);
        let hi_total = d * (step + 1);
        let mut next = vec![BigUint::zero(); acc.len()];
        for a in 0..dims.0 {
            for b in 0..dims.1 {
                for e in 0..dims.2 {
                    let t = a + b + e;
                    if t < lo_total || t > hi_total {
                        continue;
                    }
                    let mut sum = BigUint::zero();
                    for (k, c) in &terms {
                        if k[0] <= a && k[1] <= b && k[2] <= e {
                            let src = &acc[idx(a - k[0], b - k[1], e - k[2])];
                            if !src.is_zero() {
                                sum += src * *c;
                            }
                        }
                    }
                    next[idx(a, b, e)] = sum;
                }
            }
        }
        acc = next;
    }
    acc.swap_remove(idx(ka, kb, ke))
}

/// `log2 [x^a y^b z^e] p^power` in scaled floating point, for powers where
/// the exact big-integer recursion is too slow. All arithmetic is on
/// non-negative numbers, so the relative error stays near `power * 2^-52`.
///
/// The power is split in two halves whose truncated tables are combined by a
/// single dot product at the target.
pub fn tri_power_coeff_log2(p: &TriPoly, power: u32, key: Key) -> f64 {
    let (ka, kb, ke) = (key.0 as usize, key.1 as usize, key.2 as usize);
    let d = p.d as usize;
    if ka + kb + ke > d * power as usize || power == 0 {
        return if power == 0 && key == (0, 0, 0) {
            0.0
        } else {
            f64::NEG_INFINITY
        };
    }
    let dims = [ka + 1, kb + 1, ke + 1];
    let scale = p
        .coeff_sum()
        .to_f64()
        .expect("coefficient sum fits in f64");
    let terms: Vec<([usize; 3], f64)> = p
        .float_terms()
        .iter()
        .map(|t| ([t.exp[0] as usize, t.exp[1] as usize, t.exp[2] as usize], t.coeff / scale))
        .filter(|(k, _)| k[0] <= ka && k[1] <= kb && k[2] <= ke)
        .collect();
    let half = power as usize / 2;
    let rest = power as usize - half;
    let idx = |a: usize, b: usize, e: usize| (a * dims[1] + b) * dims[2] + e;
    let len = dims[0] * dims[1] * dims[2];
    let mut acc = vec![0.0f64; len];
    acc[0] = 1.0;
    let mut first_half: Option<Vec<f64>> = if half == 0 { Some(acc.clone()) } else { None };
    for step in 0..rest {
        let hi_total = d * (step + 1);
        let mut next = vec![0.0f64; len];
        for a in 0..dims[0] {
            for b in 0..dims[1] {
                if a + b > hi_total {
                    continue;
                }
                let e_max = (hi_total - a - b).min(ke);
                let row = idx(a, b, 0);
                for (k, c) in &terms {
                    if k[0] > a || k[1] > b || k[2] > e_max {
                        continue;
                    }
                    let src = idx(a - k[0], b - k[1], 0);
                    let dst = &mut next[row + k[2]..=row + e_max];
                    let s = &acc[src..=src + e_max - k[2]];
                    for (o, &v) in dst.iter_mut().zip(s) {
                        *o += c * v;
                    }
                }
            }
        }
        acc = next;
        if step + 1 == half {
            first_half = Some(acc.clone());
        }
    }
    let low = first_half.expect("half <= rest");
    let mut sum = 0.0;
    for a in 0..dims[0] {
        for b in 0..dims[1] {
            for e in 0..dims[2] {
                let v = low[idx(a, b, e)];
                if v != 0.0 {
                    sum += v * acc[idx(ka - a, kb - b, ke - e)];
                }
            }
        }
    }
    sum.log2() + power as f64 * scale.log2()
}

/// Result of a growth-rate computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Growth<P> {
    /// The infimum, in bits.
    pub value: f64,
    /// The minimizing point (limit coordinates are reported as `0` or the
    /// farthest point examined).
    pub point: P,
}

/// `inf_{x>0} log2(p(x) / x^alpha)` for a univariate polynomial.
///
/// `alpha = 0` returns the limit `log2 p(0)` as `x -> 0`.
pub fn growth_rate_uni(p: &UniPoly, alpha: f64) -> Result<Growth<f64>> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::domain("growth rate of the zero polynomial"))? as f64;
    let min_deg = p.min_degree().unwrap_or(0) as f64;
    if !(alpha >= min_deg && alpha <= deg) || !(alpha >= 0.0) {
        return Err(Error::domain(format!(
            "ratio {alpha} outside the support [{min_deg}, {deg}]"
        )));
    }
    if alpha == min_deg {
        return Ok(Growth {
            value: log2_big(&p.coeff(min_deg as usize)),
            point: 0.0,
        });
    }
    if alpha == deg {
        return Ok(Growth {
            value: log2_big(&p.coeff(deg as usize)),
            point: f64::INFINITY,
        });
    }
    let terms = p.log_terms();
    let objective = |x: f64| log_sum_exp_1d(&terms, x.ln()) / LN_2 - alpha * x.log2();
    let m = minimize_convex_1d(objective, (0.5, 2.0), 1e-10, 400)?;
    match m.limit {
        None => Ok(Growth {
            value: m.value,
            point: m.argmin,
        }),
        Some(Boundary::Zero) | Some(Boundary::Infinity) => Err(Error::numeric(format!(
            "interior ratio {alpha} produced a boundary limit"
        ))),
    }
}

fn log_sum_exp_1d(terms: &[(f64, f64)], t: f64) -> f64 {
    let m = terms
        .iter()
        .map(|(l, c)| c + l * t)
        .fold(f64::NEG_INFINITY, f64::max);
    m + terms.iter().map(|(l, c)| (c + l * t - m).exp()).sum::<f64>().ln()
}

/// Newton solver for `inf_t ln p(e^t) - alpha . t` in log-coordinates.
///
/// Variables with zero ratio are pinned at the limit `x -> 0`. The Hessian of
/// `ln p(e^t)` is the covariance of the exponent vector under the weights
/// `c_m e^{m.t}`, so every Newton system is positive semidefinite.
#[derive(Debug, Clone)]
pub struct TriGrowthSolver {
    terms: Vec<FloatTerm>,
    degree: u32,
}

impl TriGrowthSolver {
    pub fn new(p: &TriPoly) -> Self {
        TriGrowthSolver {
            terms: p.float_terms(),
            degree: p.d,
        }
    }

    /// `(ln p, mean exponent, exponent covariance)` at log-point `t`, over the
    /// terms that survive the pinned variables.
    fn moments(&self, t: [f64; 3], active: [bool; 3]) -> (f64, [f64; 3], [[f64; 3]; 3]) {
        let mut shift = f64::NEG_INFINITY;
        for term in &self.terms {
            if let Some(s) = self.exponent_of(term, t, active) {
                shift = shift.max(s);
            }
        }
        let mut z = 0.0;
        let mut m1 = [0.0; 3];
        let mut m2 = [[0.0; 3]; 3];
        for term in &self.terms {
            let Some(s) = self.exponent_of(term, t, active) else {
                continue;
            };
            let w = (s - shift).exp();
            z += w;
            let ex = term.exp.map(|v| v as f64);
            for i in 0..3 {
                m1[i] += w * ex[i];
                for j in 0..=i {
                    m2[i][j] += w * ex[i] * ex[j];
                }
            }
        }
        let mean = m1.map(|v| v / z);
        let mut cov = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..=i {
                let v = m2[i][j] / z - mean[i] * mean[j];
                cov[i][j] = v;
                cov[j][i] = v;
            }
        }
        (shift + z.ln(), mean, cov)
    }

    #[inline]
    fn exponent_of(&self, term: &FloatTerm, t: [f64; 3], active: [bool; 3]) -> Option<f64> {
        let mut s = term.ln_coeff;
        for i in 0..3 {
            if term.exp[i] != 0 {
                if !active[i] {
                    return None;
                }
                s += term.exp[i] as f64 * t[i];
            }
        }
        Some(s)
    }

    /// Growth rate `inf log2(p / x^a1 y^a2 z^a3)`, optionally warm-started at
    /// a log-point.
    pub fn solve(&self, alphas: [f64; 3], warm: Option<[f64; 3]>) -> Result<Growth<[f64; 3]>> {
        let total: f64 = alphas.iter().sum();
        if alphas.iter().any(|&a| !(a >= 0.0)) || total > self.degree as f64 + 1e-12 {
            return Err(Error::domain(format!("ratios {alphas:?} outside the degree range")));
        }
        let active = alphas.map(|a| a > 0.0);
        let mut t = warm.unwrap_or([0.0; 3]);
        for i in 0..3 {
            if !active[i] {
                t[i] = 0.0;
            }
        }
        let objective = |t: [f64; 3], ln_p: f64| {
            ln_p - (0..3).map(|i| if active[i] { alphas[i] * t[i] } else { 0.0 }).sum::<f64>()
        };
        let (mut ln_p, mut mean, mut cov) = self.moments(t, active);
        if !ln_p.is_finite() {
            return Err(Error::domain("polynomial vanishes on the pinned face"));
        }
        let mut f = objective(t, ln_p);
        for _ in 0..200 {
            let grad: [f64; 3] = std::array::from_fn(|i| if active[i] { mean[i] - alphas[i] } else { 0.0 });
            let gnorm = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
            if gnorm < 1e-11 {
                return Ok(Growth {
                    value: f / LN_2,
                    point: std::array::from_fn(|i| if active[i] { t[i].exp() } else { 0.0 }),
                });
            }
            let step = newton_step(&cov, &grad, active);
            // backtracking line search on the convex objective
            let mut lambda = 1.0;
            let mut accepted = false;
            for _ in 0..60 {
                let trial: [f64; 3] = std::array::from_fn(|i| t[i] + lambda * step[i]);
                if trial.iter().any(|v| v.abs() > 700.0) {
                    lambda *= 0.5;
                    continue;
                }
                let (lp, mn, cv) = self.moments(trial, active);
                let ft = objective(trial, lp);
                let decrease: f64 = (0..3).map(|i| grad[i] * step[i]).sum();
                if ft <= f + 1e-4 * lambda * decrease || (ft - f).abs() < 1e-15 * f.abs().max(1.0) {
                    t = trial;
                    ln_p = lp;
                    mean = mn;
                    cov = cv;
                    f = ft;
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !accepted {
                if gnorm < 1e-8 {
                    break;
                }
                return Err(Error::Numeric {
                    msg: format!("growth-rate Newton stalled at ratios {alphas:?}"),
                    best: Some(t.to_vec()),
                });
            }
        }
        let grad_ok = (0..3).all(|i| !active[i] || (mean[i] - alphas[i]).abs() < 1e-7);
        if !grad_ok || t.iter().any(|v| v.abs() > 600.0) {
            return Err(Error::domain(format!(
                "ratios {alphas:?} are not attainable (infimum not reached)"
            )));
        }
        let _ = ln_p;
        Ok(Growth {
            value: f / LN_2,
            point: std::array::from_fn(|i| if active[i] { t[i].exp() } else { 0.0 }),
        })
    }
}

// Damped Newton direction -(H + mu I)^{-1} g restricted to active coordinates.
fn newton_step(h: &[[f64; 3]; 3], g: &[f64; 3], active: [bool; 3]) -> [f64; 3] {
    let idx: Vec<usize> = (0..3).filter(|&i| active[i]).collect();
    let n = idx.len();
    let scale = idx.iter().map(|&i| h[i][i]).fold(0.0f64, f64::max).max(1e-300);
    let mut mu = 1e-12 * scale;
    loop {
        let mut a = [[0.0; 3]; 3];
        let mut rhs = [0.0; 3];
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                a[r][c] = h[i][j] + if r == c { mu } else { 0.0 };
            }
            rhs[r] = -g[i];
        }
        if let Some(sol) = solve_spd(&a, &rhs, n) {
            let mut out = [0.0; 3];
            for (r, &i) in idx.iter().enumerate() {
                // cap individual steps; far-off starts approach in stages
                out[i] = sol[r].clamp(-20.0, 20.0);
            }
            return out;
        }
        mu = (mu * 100.0).max(1e-10);
        if mu > 1e10 * scale.max(1.0) {
            let mut out = [0.0; 3];
            for &i in &idx {
                out[i] = -g[i];
            }
            return out;
        }
    }
}

// Cholesky solve of an n x n (n <= 3) symmetric positive definite system.
fn solve_spd(a: &[[f64; 3]; 3], b: &[f64; 3], n: usize) -> Option<[f64; 3]> {
    let mut l = [[0.0; 3]; 3];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if !(s > 0.0) {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut y = [0.0; 3];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i][k] * y[k];
        }
        y[i] = s / l[i][i];
    }
    let mut x = [0.0; 3];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= l[k][i] * x[k];
        }
        x[i] = s / l[i][i];
    }
    Some(x)
}

/// `inf_{x,y,z>0} log2(p / (x^a1 y^a2 z^a3))`. Zero ratios are taken as the
/// limit of the corresponding variable going to zero.
pub fn growth_rate_tri(p: &TriPoly, alphas: [f64; 3]) -> Result<Growth<[f64; 3]>> {
    TriGrowthSolver::new(p).solve(alphas, None)
}
