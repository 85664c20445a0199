use std::path::PathBuf;

use clap::Args;
use ldpc_exponent_core::confidence::confidence_at_with_slack;
use ldpc_exponent_core::enumerators::{alpha0 as find_alpha0, growth_avg_spectrum, EnsembleParams};
use ldpc_exponent_core::exponent::{uniform_grid, BoundConfig, ExponentCurve, ExponentProfile};

use crate::error::CliError;
use crate::manifest::RunManifest;
use crate::output::{emit, num, render_csv};
use crate::plot::{render_svg, Series};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gamma {
    Auto,
    Value(f64),
}

fn parse_gamma(s: &str) -> Result<Gamma, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Gamma::Auto);
    }
    s.parse::<f64>()
        .map(Gamma::Value)
        .map_err(|_| format!("expected `auto` or a number, got `{s}`"))
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[arg(long)]
    pub c: u32,
    #[arg(long)]
    pub d: u32,
    /// Expurgation fraction, or `auto` for 0.9 alpha0.
    #[arg(long, default_value = "auto", value_parser = parse_gamma)]
    pub gamma: Gamma,
    #[arg(long, default_value_t = 0.01)]
    pub delta_min: f64,
    #[arg(long, default_value_t = 0.99)]
    pub delta_max: f64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Grid points over eps in the outer maximization.
    #[arg(long)]
    pub epsilon_grid: Option<usize>,
    /// Grid points over eta in E1.
    #[arg(long)]
    pub eta_grid: Option<usize>,
    /// Grid points per axis in the E2 scan.
    #[arg(long)]
    pub pair_grid: Option<usize>,
    /// Concentration slack of the confidence level.
    #[arg(long, default_value_t = 1.0)]
    pub confidence_slack: f64,
    /// CSV destination (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also render an SVG plot here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

impl CurveArgs {
    fn setup(&self) -> Result<(EnsembleParams, BoundConfig, Vec<f64>), CliError> {
        let params = EnsembleParams::new(self.c, self.d)?;
        let mut cfg = match self.gamma {
            Gamma::Auto if self.c <= 2 => {
                return Err(CliError::Usage(format!(
                    "expurgation undefined for c <= 2 (got c = {}); pass an explicit --gamma",
                    self.c
                )))
            }
            Gamma::Auto => BoundConfig::for_params(&params)?,
            Gamma::Value(g) => BoundConfig::with_gamma(g),
        };
        if let Some(n) = self.epsilon_grid {
            cfg.epsilon_grid = n;
        }
        if let Some(n) = self.eta_grid {
            cfg.eta_grid = n;
        }
        if let Some(n) = self.pair_grid {
            cfg.pair_grid = n;
        }
        cfg.confidence_slack = self.confidence_slack;
        cfg.validate(&params)?;
        if !(self.delta_min > 0.0 && self.delta_max < 1.0 && self.delta_min <= self.delta_max) {
            return Err(CliError::Usage(format!(
                "delta range [{}, {}] must satisfy 0 < min <= max < 1",
                self.delta_min, self.delta_max
            )));
        }
        if self.steps == 0 || (self.steps > 1 && self.delta_min == self.delta_max) {
            return Err(CliError::Usage("need steps >= 1 and a non-empty range for steps > 1".into()));
        }
        Ok((params, cfg, uniform_grid(self.delta_min, self.delta_max, self.steps)))
    }

    fn manifest(&self, command: &str, cfg: &BoundConfig) -> RunManifest {
        RunManifest::new(command)
            .param("c", self.c)
            .param("d", self.d)
            .param("gamma", cfg.gamma)
            .param("delta_min", self.delta_min)
            .param("delta_max", self.delta_max)
            .param("steps", self.steps)
            .param("epsilon_grid", cfg.epsilon_grid)
            .param("eta_grid", cfg.eta_grid)
            .param("pair_grid", cfg.pair_grid)
            .param("alpha_slack", cfg.alpha_slack)
            .param("combine_tol", cfg.combine_tol)
            .param("confidence_slack", cfg.confidence_slack)
    }

    fn curve(&self) -> Result<(ExponentCurve, BoundConfig), CliError> {
        let (params, cfg, deltas) = self.setup()?;
        let curve = ExponentProfile::compute(&params, &cfg)?.curve(&deltas)?;
        Ok((curve, cfg))
    }
}

fn with_failures(mut m: RunManifest, curve: &ExponentCurve) -> RunManifest {
    for p in &curve.points {
        if let Some(e) = &p.error {
            m.notes.push(format!("delta={} failed: {e}", p.delta));
        }
    }
    m
}

pub fn exponent(args: &CurveArgs) -> Result<(), CliError> {
    let (curve, cfg) = args.curve()?;
    let manifest = with_failures(args.manifest("exponent", &cfg), &curve);
    let rows: Vec<Vec<String>> = curve
        .points
        .iter()
        .map(|p| {
            vec![
                num(p.delta),
                num(p.bound),
                num(p.eps_star),
                num(p.eta0),
                num(p.e1),
                num(p.e2),
                num(p.confidence),
            ]
        })
        .collect();
    let cols = ["delta", "bound_bits", "eps_star", "eta0", "E1", "E2", "confidence"];
    emit(args.out.as_deref(), &render_csv(&manifest, &cols, &rows)?)?;
    if let Some(path) = &args.svg {
        let pts = curve.points.iter().map(|p| (p.delta, p.bound)).collect();
        let svg = render_svg(&manifest.title(), "delta", "bound_bits", &[Series::new("bound_bits", pts)]);
        std::fs::write(path, svg)?;
    }
    Ok(())
}

pub fn confidence(args: &CurveArgs) -> Result<(), CliError> {
    let (curve, cfg) = args.curve()?;
    let manifest = with_failures(args.manifest("confidence", &cfg), &curve);
    let mut rows = Vec::new();
    for p in &curve.points {
        let (x_eta, beta, conf, flags) = if p.error.is_some() {
            (f64::NAN, f64::NAN, 0.0, "failed".to_string())
        } else {
            let b = confidence_at_with_slack(p.eta0, curve.params.c, curve.params.d, cfg.confidence_slack);
            let flags: Vec<String> = p.flags.iter().map(|f| f.to_string()).collect();
            (b.x_eta, b.beta_const, b.confidence, flags.join(";"))
        };
        rows.push(vec![num(p.delta), num(p.eta0), num(x_eta), num(beta), num(conf), flags]);
    }
    let cols = ["delta", "eta0", "x_eta", "beta_const", "confidence", "flags"];
    emit(args.out.as_deref(), &render_csv(&manifest, &cols, &rows)?)?;
    if let Some(path) = &args.svg {
        let pts = curve.points.iter().map(|p| (p.delta, p.confidence)).collect();
        let svg = render_svg(&manifest.title(), "delta", "confidence", &[Series::new("confidence", pts)]);
        std::fs::write(path, svg)?;
    }
    Ok(())
}

#[derive(Args, Debug, Clone)]
pub struct Alpha0Args {
    #[arg(long)]
    pub c: u32,
    #[arg(long)]
    pub d: u32,
}

pub fn alpha0(args: &Alpha0Args) -> Result<(), CliError> {
    EnsembleParams::new(args.c, args.d)?;
    if args.c <= 2 {
        return Err(CliError::Usage(format!(
            "expurgation undefined for c <= 2 (got c = {})",
            args.c
        )));
    }
    let a = find_alpha0(args.c, args.d)?;
    if !a.found {
        return Err(CliError::Usage(format!("no sign change of the spectrum growth rate for ({}, {})", args.c, args.d)));
    }
    let g = |eta: f64| growth_avg_spectrum(eta, args.c, args.d);
    let (lo, hi) = (a.value - 1e-3, a.value + 1e-3);
    let manifest = RunManifest::new("alpha0").param("c", args.c).param("d", args.d);
    let text = format!(
        "{}alpha0 = {:.6}\nbracket = [{:.6}, {:.6}]\ng({:.6}) = {:.6e}\ng({:.6}) = {:.6e}\n",
        manifest.header(),
        a.value,
        a.bracket.0,
        a.bracket.1,
        lo,
        g(lo)?,
        hi,
        g(hi)?,
    );
    emit(None, &text)
}
