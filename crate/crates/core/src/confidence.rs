//! Concentration constant of the stopping-set count and the confidence level
//! attached to each point of the exponent bound.
//!
//! The chain is: the saddle point `x_eta` of the single-set enumerator
//! `beta(x) = 1 + psi_2(x; d)`, its log-derivatives `a_beta` and `b_beta`,
//! the 3x3 log-derivative matrix of the pair enumerator `B` at
//! `(x_eta, x_eta^2, x_eta)`, the variance term `sigma_c^2` and finally the
//! constant `beta_{eta,d,c}`. All derivatives are exact polynomial
//! derivatives evaluated in floating point.

use std::fmt;

use crate::error::{Error, Result};
use crate::genfunc::{pair_mask_poly, single_mask_poly, TriPoly};
use crate::numerics::bisect_root;

/// Diagnostics raised while evaluating the concentration constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    /// `det C < 0`; its absolute value was used.
    NegativeDeterminant,
    /// `C` could not be inverted.
    SingularMatrix,
    /// `eta^2 (1 - eta)^2 - (c - 1) sigma^2 <= 0`.
    NonPositiveRadicand,
    /// The requested `eta` was outside `(0, 1)` and was replaced.
    NudgedEta,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Flag::NegativeDeterminant => "negative-determinant",
            Flag::SingularMatrix => "singular-matrix",
            Flag::NonPositiveRadicand => "non-positive-radicand",
            Flag::NudgedEta => "nudged-eta",
        };
        f.write_str(s)
    }
}

/// Every intermediate of the confidence computation at one `eta`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceBreakdown {
    pub eta: f64,
    pub x_eta: f64,
    pub a_beta: f64,
    pub b_beta: f64,
    pub c_matrix: [[f64; 3]; 3],
    pub det_c: f64,
    pub sigma2: f64,
    pub beta_const: f64,
    pub confidence: f64,
    pub flags: Vec<Flag>,
}

impl ConfidenceBreakdown {
    fn empty(eta: f64) -> Self {
        ConfidenceBreakdown {
            eta,
            x_eta: f64::NAN,
            a_beta: f64::NAN,
            b_beta: f64::NAN,
            c_matrix: [[f64::NAN; 3]; 3],
            det_c: f64::NAN,
            sigma2: f64::NAN,
            beta_const: f64::NAN,
            confidence: 0.0,
            flags: Vec::new(),
        }
    }
}

/// A failed evaluation of the concentration constant, with everything that
/// was computed before the failure.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaConstError {
    pub flag: Flag,
    pub partial: Box<ConfidenceBreakdown>,
}

impl fmt::Display for BetaConstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at eta = {}", self.flag, self.partial.eta)
    }
}

impl std::error::Error for BetaConstError {}

impl From<BetaConstError> for Error {
    fn from(e: BetaConstError) -> Self {
        let p = &e.partial;
        Error::Numeric {
            msg: e.to_string(),
            best: Some(vec![p.eta, p.x_eta, p.det_c, p.sigma2]),
        }
    }
}

// value, first and second derivative of beta(x) = 1 + psi_2(x; d)
fn beta_derivs(x: f64, d: u32) -> Result<(f64, f64, f64)> {
    let beta = single_mask_poly(d)?;
    let d1 = beta.derivative();
    let d2 = d1.derivative();
    Ok((beta.eval(x), d1.eval(x), d2.eval(x)))
}

/// Log-derivatives `a_beta(x) = x beta'/beta` and `b_beta(x) = x a_beta'(x)`.
pub fn log_derivs_beta(x: f64, d: u32) -> Result<(f64, f64)> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("x = {x} must be positive")));
    }
    let (b0, b1, b2) = beta_derivs(x, d)?;
    let a = x * b1 / b0;
    let b = a + x * x * b2 / b0 - a * a;
    Ok((a, b))
}

/// The positive root of `x ((1 + x)^{d-1} - 1) / beta(x) = eta`, i.e. of
/// `a_beta(x) = eta d`.
pub fn x_eta(eta: f64, d: u32) -> Result<f64> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::domain(format!("eta = {eta} outside (0, 1)")));
    }
    let lhs = |x: f64| log_derivs_beta(x, d).map(|(a, _)| a / d as f64).unwrap_or(f64::NAN);
    let mut hi = 1.0;
    while lhs(hi) < eta {
        hi *= 2.0;
        if hi > 1e150 {
            return Err(Error::numeric(format!("no root bracket for eta = {eta}")));
        }
    }
    let mut lo = hi.min(1.0);
    while lhs(lo) > eta {
        lo *= 0.5;
        if lo < 1e-150 {
            return Err(Error::numeric(format!("no root bracket for eta = {eta}")));
        }
    }
    bisect_root(|x| lhs(x) - eta, (lo, hi), 1e-14, 400)
}

/// The log-derivative matrix `C_ij = x_j d/dx_j (x_i f_i / f)` of `f = B`,
/// together with its asymmetry before symmetrization.
pub fn c_matrix_of(poly: &TriPoly, point: [f64; 3]) -> Result<([[f64; 3]; 3], f64)> {
    if point.iter().any(|&v| !(v > 0.0)) {
        return Err(Error::domain(format!("point {point:?} must be strictly positive")));
    }
    // Exact first and second partial derivatives, term by term.
    let mut f = 0.0;
    let mut grad = [0.0; 3];
    let mut hess = [[0.0; 3]; 3];
    for term in poly.float_terms() {
        let e = term.exp;
        let mono = |skip: [u32; 3]| -> f64 {
            (0..3)
                .map(|v| point[v].powi(e[v] as i32 - skip[v] as i32))
                .product::<f64>()
        };
        f += term.coeff * mono([0; 3]);
        for i in 0..3 {
            if e[i] == 0 {
                continue;
            }
            let mut s = [0; 3];
            s[i] = 1;
            grad[i] += term.coeff * e[i] as f64 * mono(s);
            for j in 0..3 {
                let factor = if i == j {
                    (e[i] * (e[i] - 1)) as f64
                } else {
                    (e[i] * e[j]) as f64
                };
                if factor == 0.0 {
                    continue;
                }
                let mut s2 = s;
                s2[j] += 1;
                hess[i][j] += term.coeff * factor * mono(s2);
            }
        }
    }
    if !(f > 0.0) {
        return Err(Error::domain(format!("B vanishes at {point:?}")));
    }
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let diag = if i == j { point[i] * grad[i] / f } else { 0.0 };
            c[i][j] = diag + point[i] * point[j] * (hess[i][j] / f - grad[i] * grad[j] / (f * f));
        }
    }
    let mut asym = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            asym = asym.max((c[i][j] - c[j][i]).abs());
        }
    }
    Ok((c, asym))
}

/// [`c_matrix_of`] for `B(x, y, z; d)`, symmetrized.
pub fn c_matrix(point: [f64; 3], d: u32) -> Result<[[f64; 3]; 3]> {
    let (c, asym) = c_matrix_of(&pair_mask_poly(d)?, point)?;
    if asym >= 1e-9 {
        return Err(Error::numeric(format!("C is not symmetric (asymmetry {asym:e})")));
    }
    let mut s = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            s[i][j] = 0.5 * (c[i][j] + c[j][i]);
        }
    }
    Ok(s)
}

pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

// v^T M^{-1} v via the adjugate.
fn inverse_quadratic_form(m: &[[f64; 3]; 3], v: [f64; 3]) -> Option<f64> {
    let det = det3(m);
    let scale = m.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()));
    if det.abs() <= 1e-300 || det.abs() <= 1e-14 * scale.powi(3) {
        return None;
    }
    let cof = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let minor = m[rows[0]][cols[0]] * m[rows[1]][cols[1]] - m[rows[0]][cols[1]] * m[rows[1]][cols[0]];
        if (r + c) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    let mut q = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            // (M^{-1})_{ij} = cof(j, i) / det
            q += v[i] * cof(j, i) * v[j];
        }
    }
    Some(q / det)
}

/// The concentration constant `beta_{eta,d,c}` with its full breakdown.
pub fn beta_const(eta: f64, d: u32, c: u32) -> std::result::Result<ConfidenceBreakdown, BetaConstError> {
    beta_const_with_slack(eta, d, c, 1.0)
}

/// As [`beta_const`], with the confidence computed as
/// `clamp(1 - beta / slack^2, 0, 1)`.
pub fn beta_const_with_slack(
    eta: f64,
    d: u32,
    c: u32,
    slack: f64,
) -> std::result::Result<ConfidenceBreakdown, BetaConstError> {
    let mut out = ConfidenceBreakdown::empty(eta);
    let fail = |flag: Flag, out: &ConfidenceBreakdown| BetaConstError {
        flag,
        partial: Box::new(out.clone()),
    };
    let x = x_eta(eta, d).map_err(|_| fail(Flag::NudgedEta, &out))?;
    out.x_eta = x;
    let (a, b) = log_derivs_beta(x, d).map_err(|_| fail(Flag::SingularMatrix, &out))?;
    out.a_beta = a;
    out.b_beta = b;
    let cm = c_matrix([x, x * x, x], d).map_err(|_| fail(Flag::SingularMatrix, &out))?;
    out.c_matrix = cm;
    let det = det3(&cm);
    out.det_c = det;
    if det < 0.0 {
        out.flags.push(Flag::NegativeDeterminant);
    }
    let q = inverse_quadratic_form(&cm, [-1.0, 1.0, -1.0]).ok_or_else(|| {
        out.flags.push(Flag::SingularMatrix);
        fail(Flag::SingularMatrix, &out)
    })?;
    let (cf, df) = (c as f64, d as f64);
    let sigma2 = 1.0 / (cf * df * q.abs());
    out.sigma2 = sigma2;
    let spread = eta * eta * (1.0 - eta) * (1.0 - eta);
    let radicand = det.abs() * (spread - (cf - 1.0) * sigma2);
    if !(radicand > 0.0) {
        out.flags.push(Flag::NonPositiveRadicand);
        return Err(fail(Flag::NonPositiveRadicand, &out));
    }
    let beta = b * df.sqrt() * eta * (1.0 - eta) * sigma2.sqrt() / radicand.sqrt() - 1.0;
    out.beta_const = beta;
    out.confidence = confidence_from_beta(beta, slack);
    Ok(out)
}

/// `clamp(1 - beta / slack^2, 0, 1)`.
pub fn confidence_from_beta(beta: f64, slack: f64) -> f64 {
    (1.0 - beta / (slack * slack)).clamp(0.0, 1.0)
}

/// Confidence level of a bound whose maximizing stopping-set fraction is
/// `eta0`. Numeric failures yield confidence 0 with the failure flagged.
pub fn confidence_at(eta0: f64, c: u32, d: u32) -> ConfidenceBreakdown {
    confidence_at_with_slack(eta0, c, d, 1.0)
}

pub fn confidence_at_with_slack(eta0: f64, c: u32, d: u32, slack: f64) -> ConfidenceBreakdown {
    if !(eta0 > 0.0 && eta0 < 1.0) {
        let mut b = ConfidenceBreakdown::empty(eta0);
        b.flags.push(Flag::NudgedEta);
        return b;
    }
    match beta_const_with_slack(eta0, d, c, slack) {
        Ok(b) => b,
        Err(e) => {
            let mut b = *e.partial;
            b.confidence = 0.0;
            if !b.flags.contains(&e.flag) {
                b.flags.push(e.flag);
            }
            b
        }
    }
}
