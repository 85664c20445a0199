//! Scalar utilities shared by the analytic modules: entropy functions,
//! multinomial logarithms, convex minimization in log-coordinates, bracketed
//! root finding and grid-plus-golden maximization.
//!
//! Every logarithm in this crate is base 2.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Tolerances and iteration limits used by the numeric routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Absolute tolerance for root finding.
    pub root_tol: f64,
    /// Absolute tolerance (in the log-coordinate) for minimizers.
    pub min_tol: f64,
    pub max_iters: usize,
    /// Number of uniform grid points used by outer maximizations.
    pub grid_steps: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            root_tol: 1e-10,
            min_tol: 1e-8,
            max_iters: 200,
            grid_steps: 400,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.root_tol > 0.0 && self.min_tol > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        if self.max_iters < 1 {
            return Err(Error::domain("max_iters must be at least 1"));
        }
        if self.grid_steps < 2 {
            return Err(Error::domain("grid_steps must be at least 2"));
        }
        Ok(())
    }
}

const SUM_SLACK: f64 = 1e-10;

fn xlog2x(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Entropy `h(a_1, ..., a_k)` in bits, including the implicit remainder
/// `1 - sum(a_l)`. Uses `0 log 0 = 0`.
pub fn entropy(parts: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &p in parts {
        if !(p >= 0.0) {
            return Err(Error::domain(format!("entropy part {p} is negative")));
        }
        sum += p;
    }
    if sum > 1.0 + SUM_SLACK {
        return Err(Error::domain(format!("entropy parts sum to {sum} > 1")));
    }
    let rest = (1.0 - sum).max(0.0);
    Ok(-parts.iter().map(|&p| xlog2x(p)).sum::<f64>() - xlog2x(rest))
}

/// Binary entropy; the argument is clamped to `[0, 1]`.
pub fn h2(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    -xlog2x(p) - xlog2x(1.0 - p)
}

/// `log2` of an arbitrary-precision integer; `-inf` for zero.
pub fn log2_big(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map(f64::log2).unwrap_or(f64::INFINITY);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.log2() + shift as f64
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact multinomial coefficient `n! / (n_1! ... n_k! (n - sum)!)`.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigUint> {
    let total: u64 = parts.iter().sum();
    if total > n {
        return Err(Error::domain(format!(
            "multinomial parts sum to {total} > n = {n}"
        )));
    }
    let mut acc = BigUint::one();
    let mut left = n;
    for &p in parts {
        acc *= binomial(left, p);
        left -= p;
    }
    Ok(acc)
}

const EXACT_MULTINOMIAL_LIMIT: u64 = 10_000;

// ln(n!) by the Stirling series; only used for n >= 10^4 where the
// truncation error is far below f64 resolution.
fn ln_factorial_stirling(n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + inv / 12.0
        - inv * inv2 / 360.0
        + inv * inv2 * inv2 / 1260.0
}

/// `log2` of the multinomial coefficient of `n` over `parts`. Exact big-integer
/// arithmetic below `n = 10^4`, Stirling series above.
pub fn log_multinomial(n: u64, parts: &[u64]) -> Result<f64> {
    if n < EXACT_MULTINOMIAL_LIMIT {
        return Ok(log2_big(&multinomial(n, parts)?));
    }
    let total: u64 = parts.iter().sum();
    if total > n {
        return Err(Error::domain(format!(
            "multinomial parts sum to {total} > n = {n}"
        )));
    }
    let mut ln = ln_factorial_stirling(n) - ln_factorial_stirling(n - total);
    for &p in parts {
        ln -= ln_factorial_stirling(p);
    }
    Ok(ln / std::f64::consts::LN_2)
}

/// Side of the positive half-line at which an infimum is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Infimum approached as `x -> 0` (`t -> -inf`).
    Zero,
    /// Infimum approached as `x -> inf` (`t -> +inf`).
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum1d {
    pub argmin: f64,
    pub value: f64,
    /// Set when no interior minimum exists; `value` is then the value at the
    /// farthest point examined.
    pub limit: Option<Boundary>,
}

// Largest |t| examined before declaring a boundary limit.
const T_LIMIT: f64 = 700.0;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` over `t` in `[a, b]`, assuming
/// unimodality. Returns `(t, f(t))`.
pub fn golden_section<F: FnMut(f64) -> f64>(
    mut f: F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    max_iters: usize,
) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iters = 0;
    while (b - a).abs() > tol && iters < max_iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iters += 1;
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimizes a function of `x > 0` that is convex in `t = ln x`.
///
/// The bracket `(lo, hi)` is given in `x`. It is expanded geometrically until
/// the minimum is interior; if the function keeps decreasing towards `x -> 0`
/// or `x -> inf` a [`Boundary`] flag is returned instead.
pub fn minimize_convex_1d<F: FnMut(f64) -> f64>(
    mut f: F,
    bracket: (f64, f64),
    tol: f64,
    max_iters: usize,
) -> Result<Minimum1d> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::domain(format!("invalid bracket ({lo}, {hi})")));
    }
    let mut g = |t: f64| f(t.exp());
    let mut a = lo.ln();
    let mut b = hi.ln();
    let check = |v: f64, t: f64| -> Result<f64> {
        if v.is_nan() || v == f64::INFINITY {
            Err(Error::Numeric {
                msg: format!("objective is {v} at t = {t}"),
                best: Some(vec![t.exp()]),
            })
        } else {
            Ok(v)
        }
    };
    // Expand until the three-point pattern a < m < b brackets a minimum.
    let mut fa = check(g(a), a)?;
    let mut fb = check(g(b), b)?;
    let mut m = 0.5 * (a + b);
    let mut fm = check(g(m), m)?;
    let mut sides = vec![(-T_LIMIT, Boundary::Zero), (T_LIMIT, Boundary::Infinity)];
    loop {
        if fa < fm {
            sides = vec![(-T_LIMIT, Boundary::Zero)];
            if a < -T_LIMIT {
                return Ok(Minimum1d {
                    argmin: a.exp(),
                    value: fa,
                    limit: Some(Boundary::Zero),
                });
            }
            b = m;
            fb = fm;
            m = a;
            fm = fa;
            a -= 2.0 * (b - m).max(1.0);
            fa = check(g(a), a)?;
        } else if fb < fm {
            sides = vec![(T_LIMIT, Boundary::Infinity)];
            if b > T_LIMIT {
                return Ok(Minimum1d {
                    argmin: b.exp(),
                    value: fb,
                    limit: Some(Boundary::Infinity),
                });
            }
            a = m;
            fa = fm;
            m = b;
            fm = fb;
            b += 2.0 * (m - a).max(1.0);
            fb = check(g(b), b)?;
        } else {
            break;
        }
    }
    let (t, v) = golden_section(&mut g, a, b, tol, max_iters.max(200));
    let (t, v) = if fm < v { (m, fm) } else { (t, v) };
    check(v, t)?;
    // A minimum found on a floating-point plateau that extends to the edge
    // of the domain is reported as a boundary limit.
    for (edge, side) in sides {
        let probe = t + (edge - t).signum() * 64.0;
        if (probe - t).abs() < (edge - t).abs() && check(g(probe), probe)? <= v {
            let far = check(g(edge), edge)?;
            return Ok(Minimum1d {
                argmin: edge.exp(),
                value: far.min(v),
                limit: Some(side),
            });
        }
    }
    Ok(Minimum1d {
        argmin: t.exp(),
        value: v,
        limit: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum3d {
    pub argmin: [f64; 3],
    pub value: f64,
    pub limits: [Option<Boundary>; 3],
    pub sweeps: usize,
}

/// Cyclic coordinate descent for a function of `(x, y, z) > 0` that is convex
/// in log-coordinates; each coordinate step is a [`minimize_convex_1d`] solve.
pub fn minimize_convex_3d<F: FnMut([f64; 3]) -> f64>(
    mut f: F,
    start: [f64; 3],
    tol: f64,
    max_iters: usize,
) -> Result<Minimum3d> {
    if start.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::domain("start point must be strictly positive"));
    }
    let mut x = start;
    let mut value = f(x);
    if !value.is_finite() {
        return Err(Error::numeric(format!("objective not finite at start {x:?}")));
    }
    let mut limits = [None; 3];
    for sweep in 1..=max_iters {
        let before = x;
        let prev = value;
        for i in 0..3 {
            if limits[i].is_some() {
                continue;
            }
            let cur = x[i];
            let res = minimize_convex_1d(
                |v| {
                    let mut p = x;
                    p[i] = v;
                    f(p)
                },
                (cur * 0.25, cur * 4.0),
                tol * 0.1,
                max_iters,
            )
            .map_err(|e| Error::Numeric {
                msg: format!("coordinate {i} solve failed: {e}"),
                best: Some(x.to_vec()),
            })?;
            if res.value <= value {
                x[i] = res.argmin;
                value = res.value;
            }
            limits[i] = res.limit;
        }
        let step = (0..3)
            .map(|i| (x[i].ln() - before[i].ln()).abs())
            .fold(0.0, f64::max);
        if step <= tol || (prev - value).abs() <= tol * 1e-3 {
            return Ok(Minimum3d {
                argmin: x,
                value,
                limits,
                sweeps: sweep,
            });
        }
    }
    Err(Error::Numeric {
        msg: format!("coordinate descent did not converge in {max_iters} sweeps"),
        best: Some(x.to_vec()),
    })
}

/// Bisection for a root of `g` on a bracket with a sign change.
pub fn bisect_root<F: FnMut(f64) -> f64>(
    mut g: F,
    bracket: (f64, f64),
    tol: f64,
    max_iters: usize,
) -> Result<f64> {
    let (mut lo, mut hi) = bracket;
    let mut glo = g(lo);
    let ghi = g(hi);
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if !(glo * ghi < 0.0) {
        return Err(Error::domain(format!(
            "no sign change on [{lo}, {hi}]: g = ({glo}, {ghi})"
        )));
    }
    // Enough halvings to resolve f64 even when max_iters is small.
    let iters = max_iters.max(1100);
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 || gm.abs() <= tol * 1e-3 || (hi - lo) <= tol * 1e-3 {
            return Ok(mid);
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if mid == lo && mid == hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Maximizes `f` on `[lo, hi]`: a uniform grid of `steps` points followed by
/// golden-section refinement between the neighbours of the best grid point.
/// Returns `(argmax, max)`.
pub fn grid_maximize<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    steps: usize,
    tol: f64,
) -> (f64, f64) {
    if hi <= lo {
        return (lo, f(lo));
    }
    let steps = steps.max(2);
    let h = (hi - lo) / (steps - 1) as f64;
    let mut best = (lo, f64::NEG_INFINITY);
    let mut best_k = 0;
    for k in 0..steps {
        let x = if k + 1 == steps { hi } else { lo + h * k as f64 };
        let v = f(x);
        if v > best.1 {
            best = (x, v);
            best_k = k;
        }
    }
    let a = if best_k == 0 { lo } else { best.0 - h };
    let b = if best_k + 1 == steps { hi } else { best.0 + h };
    let (x, v) = golden_section(|x| -f(x), a.max(lo), b.min(hi), tol, 200);
    if -v > best.1 {
        (x, -v)
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&[0.5]).unwrap(), 1.0);
        assert_eq!(entropy(&[0.0]).unwrap(), 0.0);
        let third = 1.0 / 3.0;
        assert!((entropy(&[third, third]).unwrap() - 3f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_bad_parts() {
        assert!(entropy(&[-0.1]).is_err());
        assert!(entropy(&[0.6, 0.6]).is_err());
        // tiny excess is clamped
        assert!(entropy(&[0.5, 0.5 + 1e-12]).is_ok());
    }

    #[test]
    fn log_multinomial_examples() {
        assert!((log_multinomial(4, &[2]).unwrap() - 6f64.log2()).abs() < 1e-12);
        assert!((log_multinomial(3, &[1, 1, 1]).unwrap() - 6f64.log2()).abs() < 1e-12);
        assert!(log_multinomial(3, &[2, 2]).is_err());
    }

    #[test]
    fn log_multinomial_matches_factorial_oracle() {
        // 100! / (25! 25! 50!) via independent factorials
        let fact = |n: u64| (1..=n).fold(BigUint::one(), |acc, k| acc * k);
        let exact = fact(100) / (fact(25) * fact(25) * fact(50));
        let got = log_multinomial(100, &[25, 25]).unwrap();
        assert!((got - log2_big(&exact)).abs() < 1e-9);
    }

    #[test]
    fn stirling_branch_is_continuous_with_exact_branch() {
        let exact = log2_big(&multinomial(9_999, &[3_000, 2_000]).unwrap());
        let mut ln = ln_factorial_stirling(9_999)
            - ln_factorial_stirling(3_000)
            - ln_factorial_stirling(2_000)
            - ln_factorial_stirling(4_999);
        ln /= std::f64::consts::LN_2;
        assert!((exact - ln).abs() < 1e-6);
        let big = log_multinomial(20_000, &[10_000]).unwrap();
        assert!((big / 20_000.0 - 1.0).abs() < 1e-3);
    }

    #[test]
    fn half_binomial_rate_approaches_one() {
        let n = 1000;
        let v = log_multinomial(n, &[n / 2]).unwrap() / n as f64;
        assert!((v - 1.0).abs() < 0.02);
    }

    #[test]
    fn minimize_1d_examples() {
        let m = minimize_convex_1d(|x| x.log2().powi(2), (0.1, 10.0), 1e-8, 200).unwrap();
        assert!((m.argmin - 1.0).abs() < 1e-6 && m.value.abs() < 1e-12);
        let m = minimize_convex_1d(|x| ((1.0 + x) / x.sqrt()).log2(), (0.1, 10.0), 1e-8, 200)
            .unwrap();
        assert!((m.argmin - 1.0).abs() < 1e-6);
        assert!((m.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn minimize_1d_expands_bracket() {
        let m = minimize_convex_1d(|x| (x.ln() - 30.0).powi(2), (0.5, 2.0), 1e-9, 200).unwrap();
        assert!((m.argmin.ln() - 30.0).abs() < 1e-6);
        assert!(m.limit.is_none());
    }

    #[test]
    fn minimize_1d_flags_boundary() {
        // log2(1 + x): infimum 0 approached as x -> 0
        let m = minimize_convex_1d(|x| (1.0 + x).log2(), (0.5, 2.0), 1e-8, 200).unwrap();
        assert_eq!(m.limit, Some(Boundary::Zero));
        assert!(m.value.abs() < 1e-12);
        let m = minimize_convex_1d(|x| (1.0 + 1.0 / x).log2(), (0.5, 2.0), 1e-8, 200).unwrap();
        assert_eq!(m.limit, Some(Boundary::Infinity));
    }

    #[test]
    fn minimize_1d_binomial_entropy() {
        // inf log2((1+x)/x^a) = h(a)
        for a in [0.1, 0.3, 0.5] {
            let m = minimize_convex_1d(|x| (1.0 + x).log2() - a * x.log2(), (0.5, 2.0), 1e-10, 200)
                .unwrap();
            assert!((m.value - h2(a)).abs() < 1e-6);
        }
    }

    #[test]
    fn minimizer_is_invariant_to_bracket() {
        let f = |x: f64| (1.0 + x).powi(3).log2() - 1.2 * x.log2();
        let a = minimize_convex_1d(f, (0.5, 2.0), 1e-9, 200).unwrap();
        let b = minimize_convex_1d(f, (1e-3, 1e3), 1e-9, 200).unwrap();
        assert!((a.argmin.ln() - b.argmin.ln()).abs() < 1e-6);
    }

    #[test]
    fn minimize_3d_separable() {
        let f = |p: [f64; 3]| {
            p.iter()
                .map(|&v| ((1.0 + v) / v.sqrt()).log2())
                .sum::<f64>()
        };
        let m = minimize_convex_3d(f, [0.3, 2.0, 5.0], 1e-9, 200).unwrap();
        assert!((m.value - 3.0).abs() < 1e-10);
        for v in m.argmin {
            assert!((v - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn minimize_3d_univariate_in_product() {
        let f = |p: [f64; 3]| {
            let q = p[0] * p[1] * p[2];
            ((1.0 + q) / q.sqrt()).log2()
        };
        let m = minimize_convex_3d(f, [0.3, 2.0, 5.0], 1e-9, 200).unwrap();
        assert!((m.value - 1.0).abs() < 1e-9);
        let q: f64 = m.argmin.iter().product();
        assert!((q - 1.0).abs() < 1e-4);
    }

    #[test]
    fn minimize_3d_rejects_bad_start() {
        assert!(minimize_convex_3d(|_| 0.0, [0.0, 1.0, 1.0], 1e-8, 10).is_err());
        assert!(minimize_convex_3d(|_| f64::NAN, [1.0, 1.0, 1.0], 1e-8, 10).is_err());
    }

    #[test]
    fn bisect_examples() {
        let r = bisect_root(|x| x - 2.0, (0.0, 5.0), 1e-10, 200).unwrap();
        assert!((r - 2.0).abs() < 1e-10);
        let eta: f64 = 0.2;
        let r = bisect_root(|x| x * x - eta / (1.0 - eta), (0.0, 10.0), 1e-10, 200).unwrap();
        assert!((r - 0.5).abs() < 1e-10);
        assert!(bisect_root(|x| x * x + 1.0, (0.0, 1.0), 1e-10, 200).is_err());
    }

    #[test]
    fn grid_maximize_refines() {
        let (x, v) = grid_maximize(|x| -(x - 0.123456).powi(2), 0.0, 1.0, 11, 1e-10);
        assert!((x - 0.123456).abs() < 1e-6);
        assert!(v.abs() < 1e-10);
        let (x, _) = grid_maximize(|x| x, 0.0, 1.0, 5, 1e-10);
        assert_eq!(x, 1.0);
    }

    #[test]
    fn tolerance_validation() {
        assert!(ToleranceConfig::default().validate().is_ok());
        let bad = ToleranceConfig {
            grid_steps: 1,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
