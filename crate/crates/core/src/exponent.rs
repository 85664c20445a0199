//! Upper bound on the error exponent of the expurgated ensemble.
//!
//! `E1(eps)` and `E2(eps)` are the exponents of the first- and second-order
//! stopping-set sums at erased fraction `eps`, `E` combines them through the
//! second-order union bound, and the bound at erasure probability `delta` is
//! `-max_eps { eps log2 delta + (1 - eps) log2(1 - delta) - f(eps) }`.
//!
//! The E2 polytope is handled in the coordinates `u = eta1 - beta`,
//! `v = eta2 - beta`, `w = beta` (sizes of `S1 \ S2`, `S2 \ S1` and
//! `S1 & S2`), normalized so that `v <= u`.

use std::cell::Cell;

use crate::confidence::{confidence_at_with_slack, Flag};
use crate::enumerators::{alpha0, EnsembleParams};
use crate::error::{Error, Result};
use crate::genfunc::{growth_rate_uni, pair_mask_poly, single_mask_poly, TriGrowthSolver, UniPoly};
use crate::numerics::{entropy, golden_section, grid_maximize, h2, ToleranceConfig};
use crate::par;

/// Knobs of the bound computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConfig {
    /// Expurgation fraction; must lie in `(0, alpha0)`.
    pub gamma: f64,
    /// Slack in the exponent of the `r` rule.
    pub alpha_slack: f64,
    /// Grid points over `[gamma, 1 - R]`.
    pub epsilon_grid: usize,
    /// Grid points over `[gamma, eps]` in E1.
    pub eta_grid: usize,
    /// Grid points per axis of the E2 scan.
    pub pair_grid: usize,
    pub tolerances: ToleranceConfig,
    /// Saturation value of [`r_choice`].
    pub r_cap: u64,
    /// Concentration slack of the confidence level.
    pub confidence_slack: f64,
    /// `|E2 - E1|` below which the two are treated as equal.
    pub combine_tol: f64,
}

impl BoundConfig {
    /// Defaults with `gamma = 0.9 alpha0(c, d)`.
    pub fn for_params(params: &EnsembleParams) -> Result<Self> {
        let a0 = alpha0(params.c, params.d)?;
        if !a0.found {
            return Err(Error::Unsupported(format!(
                "no expurgation threshold for ({}, {})",
                params.c, params.d
            )));
        }
        Ok(Self::with_gamma(0.9 * a0.value))
    }

    /// Default grids and tolerances around an explicit `gamma`.
    pub fn with_gamma(gamma: f64) -> Self {
        BoundConfig {
            gamma,
            alpha_slack: 0.01,
            epsilon_grid: 400,
            eta_grid: 200,
            pair_grid: 60,
            tolerances: ToleranceConfig::default(),
            r_cap: 1 << 53,
            confidence_slack: 1.0,
            combine_tol: 1e-6,
        }
    }

    /// The same configuration with every grid twice as fine.
    pub fn doubled(&self) -> Self {
        BoundConfig {
            epsilon_grid: 2 * self.epsilon_grid - 1,
            eta_grid: 2 * self.eta_grid - 1,
            pair_grid: 2 * self.pair_grid - 1,
            ..*self
        }
    }

    pub fn validate(&self, params: &EnsembleParams) -> Result<()> {
        self.tolerances.validate()?;
        let a0 = alpha0(params.c, params.d)?;
        if !(self.gamma > 0.0 && self.gamma < a0.value) {
            return Err(Error::domain(format!(
                "gamma = {} must lie in (0, alpha0 = {})",
                self.gamma, a0.value
            )));
        }
        if !(self.alpha_slack > 0.0) {
            return Err(Error::domain("alpha_slack must be positive"));
        }
        if self.epsilon_grid < 2 || self.eta_grid < 2 || self.pair_grid < 2 {
            return Err(Error::domain("grids need at least 2 points"));
        }
        if !(self.confidence_slack > 0.0) || !(self.combine_tol >= 0.0) || self.r_cap == 0 {
            return Err(Error::domain("invalid confidence slack, combine tolerance or r cap"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct E1Value {
    pub value: f64,
    /// Maximizing stopping-set fraction.
    pub eta0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct E2Value {
    pub value: f64,
    /// Maximizing `(u, v, w)`.
    pub argmax: [f64; 3],
}

/// E1, E2 and E at one `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsSample {
    pub eps: f64,
    pub e1: E1Value,
    pub e2: E2Value,
    pub e: f64,
}

/// `E1` if `E2 >= E1` (within `tol`), else `2 E1 - E2`.
pub fn combine(e1: f64, e2: f64, tol: f64) -> f64 {
    if e2 >= e1 - tol {
        e1
    } else {
        2.0 * e1 - e2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RChoice {
    pub r: u64,
    pub saturated: bool,
}

/// The union-bound parameter: 1 when `e2 >= e1`, otherwise
/// `floor(2^{n (e1 - e2 + alpha_slack)})`, saturating at `cap`.
pub fn r_choice(e1: f64, e2: f64, n: u64, alpha_slack: f64, cap: u64) -> RChoice {
    if e2 >= e1 {
        return RChoice { r: 1, saturated: false };
    }
    let mut x = n as f64 * (e1 - e2 + alpha_slack);
    // snap rounding noise so that exact powers of two floor correctly
    if (x - x.round()).abs() < 1e-9 {
        x = x.round();
    }
    if x >= (cap as f64).log2() || x >= 64.0 {
        return RChoice { r: cap, saturated: true };
    }
    let r = (x.exp2().floor() as u64).clamp(1, cap);
    RChoice { r, saturated: false }
}

/// Which piece of the outer maximand attained the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `eps` in `[gamma, 1 - R]`, where the stopping-set exponent applies.
    Analytic,
    /// `eps` in `[1 - R, 1]`, where decoding fails for every code.
    Deterministic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentPoint {
    pub delta: f64,
    pub bound: f64,
    pub eps_star: f64,
    pub eta0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e: f64,
    pub confidence: f64,
    pub branch: Branch,
    pub flags: Vec<Flag>,
    /// Set when the point could not be computed; numeric fields are NaN.
    pub error: Option<String>,
}

impl ExponentPoint {
    fn failed(delta: f64, err: &Error) -> Self {
        ExponentPoint {
            delta,
            bound: f64::NAN,
            eps_star: f64::NAN,
            eta0: f64::NAN,
            e1: f64::NAN,
            e2: f64::NAN,
            e: f64::NAN,
            confidence: 0.0,
            branch: Branch::Analytic,
            flags: Vec::new(),
            error: Some(err.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentCurve {
    pub params: EnsembleParams,
    pub config: BoundConfig,
    pub points: Vec<ExponentPoint>,
}

/// Evaluates E1, E2 and E for a fixed ensemble and configuration.
#[derive(Debug, Clone)]
pub struct ExponentEvaluator {
    params: EnsembleParams,
    config: BoundConfig,
    beta: UniPoly,
    solver: TriGrowthSolver,
}

// Linear constraints a . p + b >= 0 of the (u, v, w) polytope at eps.
fn pair_constraints(eps: f64, gamma: f64) -> [([f64; 3], f64); 5] {
    [
        ([1.0, -1.0, 0.0], 0.0),   // v <= u
        ([0.0, 1.0, 0.0], 0.0),    // v >= 0
        ([0.0, 0.0, 1.0], 0.0),    // w >= 0
        ([0.0, 1.0, 1.0], -gamma), // eta2 >= gamma
        ([-1.0, -1.0, -1.0], eps), // |S1 u S2| <= eps
    ]
}

// Feasible step range of p + t dir.
fn line_range(cons: &[([f64; 3], f64)], p: [f64; 3], dir: [f64; 3]) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (a, b) in cons {
        let val = a[0] * p[0] + a[1] * p[1] + a[2] * p[2] + b;
        let slope = a[0] * dir[0] + a[1] * dir[1] + a[2] * dir[2];
        if slope.abs() < 1e-15 {
            continue;
        }
        let t = -val / slope;
        if slope > 0.0 {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
    }
    (lo.min(0.0), hi.max(0.0))
}

fn warm_of(point: [f64; 3]) -> [f64; 3] {
    point.map(|x| if x > 0.0 && x.is_finite() { x.ln() } else { 0.0 })
}

impl ExponentEvaluator {
    pub fn new(params: &EnsembleParams, config: &BoundConfig) -> Result<Self> {
        config.validate(params)?;
        Ok(Self::new_unchecked(params, config))
    }

    // Skips the alpha0 check; for callers that already validated.
    fn new_unchecked(params: &EnsembleParams, config: &BoundConfig) -> Self {
        let pair = pair_mask_poly(params.d).expect("d >= 2 is validated by EnsembleParams");
        ExponentEvaluator {
            params: *params,
            config: *config,
            beta: single_mask_poly(params.d).expect("d >= 2 is validated by EnsembleParams"),
            solver: TriGrowthSolver::new(&pair),
        }
    }

    pub fn params(&self) -> &EnsembleParams {
        &self.params
    }

    pub fn config(&self) -> &BoundConfig {
        &self.config
    }

    fn eps_max(&self) -> f64 {
        1.0 - self.params.rate()
    }

    fn check_eps(&self, eps: f64) -> Result<()> {
        let g = self.config.gamma;
        if !(eps >= g && eps <= self.eps_max() + 1e-12) {
            return Err(Error::domain(format!(
                "eps = {eps} outside [gamma, 1 - R] = [{g}, {}]",
                self.eps_max()
            )));
        }
        Ok(())
    }

    /// `eps h(eta/eps) - c h(eta) + (c/d) inf_x log2(beta(x) / x^{eta d})`.
    pub fn e1_objective(&self, eps: f64, eta: f64) -> Result<f64> {
        let (c, d) = (self.params.c as f64, self.params.d as f64);
        let inf = growth_rate_uni(&self.beta, eta * d)?.value;
        Ok(eps * h2(eta / eps) - c * h2(eta) + c / d * inf)
    }

    pub fn e1(&self, eps: f64) -> Result<E1Value> {
        self.check_eps(eps)?;
        let g = self.config.gamma;
        let err = Cell::new(None);
        let f = |eta: f64| match self.e1_objective(eps, eta.clamp(g, eps)) {
            Ok(v) => v,
            Err(e) => {
                err.set(Some(e));
                f64::NEG_INFINITY
            }
        };
        let (eta0, max) = grid_maximize(f, g, eps, self.config.eta_grid, self.config.tolerances.min_tol);
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        Ok(E1Value {
            value: -h2(eps) - max,
            eta0: eta0.clamp(g, eps),
        })
    }

    /// The bracketed E2 objective at `(u, v, w)` with the minimizer of the
    /// inner infimum, optionally warm-started from a previous minimizer.
    pub fn e2_objective(&self, eps: f64, p: [f64; 3], warm: Option<[f64; 3]>) -> Result<(f64, [f64; 3])> {
        let (c, d) = (self.params.c as f64, self.params.d as f64);
        let [u, v, w] = p;
        let inner = entropy(&[u / eps, v / eps, w / eps])?;
        let outer = entropy(&[u, v, w])?;
        // x counts S1 \ S2, y the intersection, z S2 \ S1
        let g = self.solver.solve([u * d, w * d, v * d], warm.map(warm_of))?;
        Ok((eps * inner - c * outer + c / d * g.value, g.point))
    }

    pub fn e2(&self, eps: f64) -> Result<E2Value> {
        self.check_eps(eps)?;
        let (best, point, hint) = self.e2_scan(eps)?;
        // the collapse corner carries the E1 objective
        let corner = self.e1(eps)?;
        let corner_p = [0.0, 0.0, corner.eta0];
        let (corner_v, corner_x) = self.e2_objective(eps, corner_p, None)?;
        let start = if corner_v > best { (corner_p, corner_v, corner_x) } else { (point, best, hint) };
        self.e2_refine(eps, start, eps / (self.config.pair_grid - 1) as f64)
    }

    /// Local E2 maximization started from `(u, v, w)` scaled into the
    /// polytope at `eps`; no global scan.
    pub fn e2_local(&self, eps: f64, start: [f64; 3]) -> Result<E2Value> {
        self.check_eps(eps)?;
        let p = self.project(eps, start);
        let (v, x) = self.e2_objective(eps, p, None)?;
        self.e2_refine(eps, (p, v, x), eps / (self.config.pair_grid - 1) as f64)
    }

    // Nearest-ish feasible point: clip coordinates, then shrink toward the
    // collapse corner at gamma.
    fn project(&self, eps: f64, p: [f64; 3]) -> [f64; 3] {
        let g = self.config.gamma;
        let [mut u, mut v, mut w] = p.map(|x| x.max(0.0));
        if v > u {
            std::mem::swap(&mut u, &mut v);
        }
        if v + w < g {
            w = g - v;
        }
        let total = u + v + w;
        if total > eps {
            let s = (eps - g).max(0.0) / (total - g).max(1e-300);
            u *= s;
            v *= s;
            w = g + (w - g).max(0.0) * s;
            if v + w < g {
                w = g - v;
            }
        }
        [u, v, w]
    }

    // Lattice scan over (u, v, w) with spacing eps / (pair_grid - 1); slices
    // of constant w run in parallel, each warm-starting along its rows.
    fn e2_scan(&self, eps: f64) -> Result<(f64, [f64; 3], [f64; 3])> {
        let n = self.config.pair_grid;
        let s = eps / (n - 1) as f64;
        let g = self.config.gamma;
        let slack = 1e-12;
        let slices = par::map_range(n, |k| -> Result<Option<(f64, [f64; 3], [f64; 3])>> {
            let w = s * k as f64;
            let mut best: Option<(f64, [f64; 3], [f64; 3])> = None;
            let mut row_warm: Option<[f64; 3]> = None;
            for j in 0..n {
                let v = s * j as f64;
                if v + w < g - slack || 2.0 * v + w > eps + slack {
                    continue;
                }
                let mut warm = row_warm;
                for i in j..n {
                    let u = s * i as f64;
                    if u + v + w > eps + slack {
                        break;
                    }
                    let p = [u, v, w.min(eps - u - v).max(0.0)];
                    let (val, x) = self.e2_objective(eps, p, warm)?;
                    if i == j {
                        row_warm = Some(x);
                    }
                    warm = Some(x);
                    if best.map_or(true, |b| val > b.0) {
                        best = Some((val, p, x));
                    }
                }
            }
            Ok(best)
        });
        let mut best: Option<(f64, [f64; 3], [f64; 3])> = None;
        for slice in slices {
            if let Some(b) = slice? {
                if best.map_or(true, |cur| b.0 > cur.0) {
                    best = Some(b);
                }
            }
        }
        best.ok_or_else(|| Error::numeric(format!("empty E2 polytope at eps = {eps}")))
    }

    // Pattern search: golden-section line maximizations along the axes and
    // along the last net move, with a shrinking window.
    fn e2_refine(&self, eps: f64, start: ([f64; 3], f64, [f64; 3]), h0: f64) -> Result<E2Value> {
        let cons = pair_constraints(eps, self.config.gamma);
        let tol = self.config.tolerances.min_tol.max(1e-9);
        let (mut p, mut best, mut warm) = start;
        let mut h = h0.max(tol);
        let err = Cell::new(None);
        let mut iters = 0;
        while h > tol && iters < self.config.tolerances.max_iters {
            iters += 1;
            let before = p;
            let mut dirs: Vec<[f64; 3]> = vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
            for pass in 0..2 {
                for dir in &dirs {
                    let (lo, hi) = line_range(&cons, p, *dir);
                    let norm = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
                    let reach = h / norm;
                    let (a, b) = ((-reach).max(lo), reach.min(hi));
                    if b - a <= tol {
                        continue;
                    }
                    let at = |t: f64| [p[0] + t * dir[0], p[1] + t * dir[1], p[2] + t * dir[2]];
                    let f = |t: f64| match self.e2_objective(eps, at(t), Some(warm)) {
                        Ok((v, _)) => -v,
                        Err(e) => {
                            err.set(Some(e));
                            f64::INFINITY
                        }
                    };
                    let (t, _) = golden_section(f, a, b, tol / norm, 200);
                    if let Some(e) = err.take() {
                        return Err(e);
                    }
                    let (v, x) = self.e2_objective(eps, at(t), Some(warm))?;
                    if v > best {
                        best = v;
                        p = at(t);
                        warm = x;
                    }
                }
                if pass == 0 {
                    let mv = [p[0] - before[0], p[1] - before[1], p[2] - before[2]];
                    if mv.iter().all(|m| m.abs() < tol) {
                        break;
                    }
                    dirs = vec![mv];
                }
            }
            let moved = (0..3).map(|i| (p[i] - before[i]).abs()).fold(0.0, f64::max);
            if moved < 0.25 * h {
                h *= 0.5;
            }
        }
        Ok(E2Value {
            value: -h2(eps) - best,
            argmax: p,
        })
    }

    /// E1, E2 and the combined E at `eps`, with a full E2 scan.
    pub fn sample(&self, eps: f64) -> Result<EpsSample> {
        let e1 = self.e1(eps)?;
        let e2 = self.e2(eps)?;
        Ok(self.assemble(eps, e1, e2))
    }

    /// As [`Self::sample`], but E2 is refined locally from `hint`.
    pub fn sample_near(&self, eps: f64, hint: [f64; 3]) -> Result<EpsSample> {
        let e1 = self.e1(eps)?;
        let mut e2 = self.e2_local(eps, hint)?;
        // keep the collapse-corner guarantee E2 <= E1
        let corner = self.e2_local(eps, [0.0, 0.0, e1.eta0])?;
        if corner.value < e2.value {
            e2 = corner;
        }
        Ok(self.assemble(eps, e1, e2))
    }

    fn assemble(&self, eps: f64, e1: E1Value, e2: E2Value) -> EpsSample {
        EpsSample {
            eps,
            e1,
            e2,
            e: combine(e1.value, e2.value, self.config.combine_tol),
        }
    }
}

/// `E1(eps)` and the maximizing `eta0`.
pub fn e1(eps: f64, params: &EnsembleParams, config: &BoundConfig) -> Result<E1Value> {
    ExponentEvaluator::new(params, config)?.e1(eps)
}

pub fn e2(eps: f64, params: &EnsembleParams, config: &BoundConfig) -> Result<E2Value> {
    ExponentEvaluator::new(params, config)?.e2(eps)
}

pub fn e_combined(eps: f64, params: &EnsembleParams, config: &BoundConfig) -> Result<f64> {
    Ok(ExponentEvaluator::new(params, config)?.sample(eps)?.e)
}

/// `E` tabulated on the `eps` grid over `[gamma, 1 - R]`; reused across all
/// erasure probabilities.
#[derive(Debug, Clone)]
pub struct ExponentProfile {
    eval: ExponentEvaluator,
    samples: Vec<EpsSample>,
}

impl ExponentProfile {
    pub fn compute(params: &EnsembleParams, config: &BoundConfig) -> Result<Self> {
        let eval = ExponentEvaluator::new(params, config)?;
        let n = config.epsilon_grid;
        let (lo, hi) = (config.gamma, eval.eps_max());
        let step = (hi - lo) / (n - 1) as f64;
        let samples = par::map_range(n, |k| {
            let eps = if k + 1 == n { hi } else { lo + step * k as f64 };
            eval.sample(eps)
        });
        let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(ExponentProfile { eval, samples })
    }

    pub fn samples(&self) -> &[EpsSample] {
        &self.samples
    }

    pub fn evaluator(&self) -> &ExponentEvaluator {
        &self.eval
    }

    /// The bound at erasure probability `delta`.
    pub fn point(&self, delta: f64) -> Result<ExponentPoint> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::domain(format!("delta = {delta} outside (0, 1)")));
        }
        let (l1, l0) = (delta.log2(), (1.0 - delta).log2());
        let phi = |eps: f64, e: f64| eps * l1 + (1.0 - eps) * l0 - e;
        let s = &self.samples;
        let (k, _) = s
            .iter()
            .enumerate()
            .map(|(k, x)| (k, phi(x.eps, x.e)))
            .fold((0, f64::NEG_INFINITY), |b, (k, v)| if v > b.1 { (k, v) } else { b });
        let mut best = s[k];
        let mut best_v = phi(best.eps, best.e);
        // golden refinement between the grid neighbours, with E re-evaluated
        if s.len() > 1 {
            let a = s[k.saturating_sub(1)].eps;
            let b = s[(k + 1).min(s.len() - 1)].eps;
            let hint = best.e2.argmax;
            let tol = 1e-3 * (s[1].eps - s[0].eps);
            let err = Cell::new(None);
            let f = |eps: f64| match self.eval.sample_near(eps, hint) {
                Ok(x) => -phi(eps, x.e),
                Err(e) => {
                    err.set(Some(e));
                    f64::INFINITY
                }
            };
            let (eps, _) = golden_section(f, a, b, tol, 200);
            if let Some(e) = err.into_inner() {
                return Err(e);
            }
            let cand = self.eval.sample_near(eps, hint)?;
            let v = phi(eps, cand.e);
            if v > best_v {
                best = cand;
                best_v = v;
            }
        }
        // closed form on [1 - R, 1]: the maximand is -D(eps || delta)
        let eps_max = self.eval.eps_max();
        let eps_d = delta.clamp(eps_max, 1.0);
        let det_v = eps_d * l1 + (1.0 - eps_d) * l0 + h2(eps_d);
        let (branch, eps_star, bound) = if det_v > best_v {
            (Branch::Deterministic, eps_d, 0.0 - det_v)
        } else {
            (Branch::Analytic, best.eps, 0.0 - best_v)
        };
        let at = if branch == Branch::Deterministic { *s.last().expect("non-empty grid") } else { best };
        let mut flags = Vec::new();
        let mut eta0 = at.e1.eta0;
        if !(eta0 > 0.0 && eta0 < 1.0) {
            eta0 = self.eval.config.gamma;
            flags.push(Flag::NudgedEta);
        }
        let p = &self.eval.params;
        let conf = confidence_at_with_slack(eta0, p.c, p.d, self.eval.config.confidence_slack);
        flags.extend(conf.flags.iter().copied());
        Ok(ExponentPoint {
            delta,
            bound,
            eps_star,
            eta0,
            e1: at.e1.value,
            e2: at.e2.value,
            e: at.e,
            confidence: conf.confidence,
            branch,
            flags,
            error: None,
        })
    }

    /// One point per grid value; failures are recorded in the point.
    pub fn curve(&self, deltas: &[f64]) -> Result<ExponentCurve> {
        check_grid(deltas)?;
        let points = par::map(deltas, |&d| self.point(d).unwrap_or_else(|e| ExponentPoint::failed(d, &e)));
        Ok(ExponentCurve {
            params: self.eval.params,
            config: self.eval.config,
            points,
        })
    }
}

fn check_grid(deltas: &[f64]) -> Result<()> {
    if deltas.iter().any(|&d| !(d > 0.0 && d < 1.0)) {
        return Err(Error::domain("delta grid must lie in (0, 1)"));
    }
    if deltas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("delta grid must be strictly increasing"));
    }
    Ok(())
}

/// Uniform grid of `n` points on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// The default erasure-probability grid: 100 points on `[0.01, 0.99]`.
pub fn default_delta_grid() -> Vec<f64> {
    uniform_grid(0.01, 0.99, 100)
}

pub fn exponent_upper_bound(delta: f64, params: &EnsembleParams, config: &BoundConfig) -> Result<ExponentPoint> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(format!("delta = {delta} outside (0, 1)")));
    }
    ExponentProfile::compute(params, config)?.point(delta)
}

pub fn bound_curve(deltas: &[f64], params: &EnsembleParams, config: &BoundConfig) -> Result<ExponentCurve> {
    check_grid(deltas)?;
    ExponentProfile::compute(params, config)?.curve(deltas)
}
