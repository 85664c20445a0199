use std::collections::BTreeMap;

use clap::{Args, ValueEnum};
use ldpc_exponent_core::enumerators::{avg_pair_spectrum, avg_spectrum, p_s1_exact, p_s2_exact, EnsembleParams, Ratio};
use ldpc_exponent_core::genfunc::{
    growth_rate_tri, growth_rate_uni, mask_allows, pair_mask_poly, pair_poly_with, poly_power_coeff,
    single_mask_poly, tri_power_coeff_log2,
};
use ldpc_exponent_core::lab::{
    census, dawson_suite, is_stopping_mask, pair_count_identity, peel_decode, sample_graph, stopping_sets,
    union_count_identity, BipartiteGraph, Peeler,
};
use ldpc_exponent_core::numerics::log2_big;
use num_bigint::BigUint;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Dawson,
    Identities,
    Spectra,
    Decoder,
    Growth,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Budget {
    Small,
    Medium,
    Large,
}

impl Budget {
    fn pick<T>(self, small: T, medium: T, large: T) -> T {
        match self {
            Budget::Small => small,
            Budget::Medium => medium,
            Budget::Large => large,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value_t = Budget::Small)]
    pub budget: Budget,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Test hook: swap in a pair mask with an off-by-one threshold so the
    /// harness can be seen to fail.
    #[arg(long, hide = true)]
    pub canary_mask_off_by_one: bool,
}

struct Outcome {
    suite: &'static str,
    checks: u64,
    details: Vec<String>,
    counterexample: Option<String>,
}

impl Outcome {
    fn new(suite: &'static str) -> Self {
        Outcome {
            suite,
            checks: 0,
            details: Vec::new(),
            counterexample: None,
        }
    }

    fn fail(&mut self, what: String) {
        if self.counterexample.is_none() {
            self.counterexample = Some(what);
        }
    }

    fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let suites: Vec<Suite> = match args.suite {
        Suite::All => vec![Suite::Dawson, Suite::Identities, Suite::Spectra, Suite::Decoder, Suite::Growth],
        s => vec![s],
    };
    let mut failed = Vec::new();
    for s in &suites {
        let out = match s {
            Suite::Dawson => dawson(args)?,
            Suite::Identities => identities(args)?,
            Suite::Spectra => spectra(args)?,
            Suite::Decoder => decoder(args)?,
            Suite::Growth => growth(args)?,
            Suite::All => unreachable!(),
        };
        println!("suite {}: {} ({} checks)", out.suite, if out.passed() { "PASS" } else { "FAIL" }, out.checks);
        for d in &out.details {
            println!("  {d}");
        }
        if let Some(c) = &out.counterexample {
            println!("  counterexample: {c}");
            failed.push(out.suite);
        }
    }
    let status = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "summary: suites={} passed={} failed={} status={status} budget={:?} seed={}",
        suites.len(),
        suites.len() - failed.len(),
        failed.len(),
        args.budget,
        args.seed
    );
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(format!("failed suites: {}", failed.join(", "))))
    }
}

fn dawson(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("dawson");
    let families = args.budget.pick(1_000, 10_000, 100_000);
    let rep = dawson_suite(families, 6, 64, args.seed)?;
    out.checks = rep.point_checks;
    out.details.push(format!(
        "{} random families, identical-event equality at r = M - 1: {}",
        rep.families, rep.equality_at_identical
    ));
    if let Some(c) = &rep.counterexample {
        out.fail(format!("{c:?}"));
    } else if !rep.equality_at_identical {
        out.fail("identical-event family is not tight at r = M - 1".into());
    }
    Ok(out)
}

fn seeded_graphs(count: u64, seed: u64, shapes: &[(u32, u32, u32)]) -> Result<Vec<(u64, BipartiteGraph)>, CliError> {
    let mut v = Vec::new();
    for k in 0..count {
        let (c, d, n) = shapes[k as usize % shapes.len()];
        let s = seed.wrapping_mul(1_000_003).wrapping_add(k);
        v.push((s, sample_graph(&EnsembleParams::with_length(c, d, n)?, s)?));
    }
    Ok(v)
}

fn identities(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("identities");
    let graphs = seeded_graphs(20, args.seed, &[(3, 6, 12), (2, 4, 12), (2, 4, 10)])?;
    let pair_graphs = args.budget.pick(4, 10, 20);
    for (k, (s, g)) in graphs.iter().enumerate() {
        for l in 0..=g.n() {
            out.checks += 1;
            let id = union_count_identity(g, l)?;
            if !id.holds() {
                out.fail(format!("union identity, graph seed {s}, l = {l}: {} != {}", id.lhs, id.rhs));
            }
            if k < pair_graphs {
                out.checks += 1;
                let id = pair_count_identity(g, l)?;
                if !id.holds() {
                    out.fail(format!("pair identity, graph seed {s}, l = {l}: {} != {}", id.lhs, id.rhs));
                }
            }
        }
    }
    out.details.push(format!("20 graphs (N <= 12), pair identity on the first {pair_graphs}"));
    Ok(out)
}

fn spectra(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("spectra");
    // per-check enumerator against a brute force over socket labellings
    let canary = args.canary_mask_off_by_one;
    let allows = move |a: u32, b: u32, e: u32, d: u32| {
        if canary && b == 0 {
            // threshold 1 instead of 2 on the S1-only side
            e != 1
        } else {
            mask_allows(a, b, e, d)
        }
    };
    for d in 2u32..=6 {
        let poly = pair_poly_with(d, allows)?;
        let mut brute: BTreeMap<(u32, u32, u32), u64> = BTreeMap::new();
        for code in 0..4u64.pow(d) {
            let mut k = [0u32; 4];
            let mut x = code;
            for _ in 0..d {
                k[(x % 4) as usize] += 1;
                x /= 4;
            }
            if k[1] + k[2] != 1 && k[2] + k[3] != 1 {
                *brute.entry((k[1], k[2], k[3])).or_insert(0) += 1;
            }
        }
        out.checks += 1;
        let keys: std::collections::BTreeSet<_> = brute.keys().chain(poly.terms().keys()).copied().collect();
        for key in keys {
            let want = BigUint::from(brute.get(&key).copied().unwrap_or(0));
            let got = poly.coeff(key);
            if got != want {
                out.fail(format!("pair enumerator d = {d}, term x^{} y^{} z^{}: {got} != brute force {want}", key.0, key.1, key.2));
                break;
            }
        }
    }
    if !canary && pair_mask_poly(4)? != pair_poly_with(4, mask_allows)? {
        out.fail("pair_mask_poly differs from its predicate".into());
    }

    // exact placement probabilities on (2, 4, 4) over all 8! socket maps
    let p = EnsembleParams::with_length(2, 4, 4)?;
    let (single, pairs, total) = placement_counts(&p)?;
    for (i, &count) in single.iter().enumerate() {
        out.checks += 1;
        if !p_s1_exact(i as u32, &p)?.same_value(&ratio(count, total)) {
            out.fail(format!("P_s1({i}) on (2,4,4): {count}/{total} placements"));
        }
    }
    for (&(i, j, k), &count) in &pairs {
        out.checks += 1;
        if !p_s2_exact(i, j, k, &p)?.same_value(&ratio(count, total)) {
            out.fail(format!("P_s2({i},{j},{k}) on (2,4,4): {count}/{total} placements"));
        }
    }

    // census averages against the averaged spectra
    let graphs = args.budget.pick(2_000u64, 20_000, 100_000);
    let mut s_acc = vec![(0f64, 0f64); 5];
    let mut pair_acc: BTreeMap<(u32, u32, u32), (f64, f64)> = pairs.keys().map(|&k| (k, (0.0, 0.0))).collect();
    for s in 0..graphs {
        let spec = census(&sample_graph(&p, args.seed.wrapping_mul(7_919).wrapping_add(s))?, 4)?;
        for (k, acc) in s_acc.iter_mut().enumerate() {
            let x = spec.s(k) as f64;
            *acc = (acc.0 + x, acc.1 + x * x);
        }
        for (&(i, j, k), acc) in pair_acc.iter_mut() {
            let x = spec.pair(i, j, k) as f64;
            *acc = (acc.0 + x, acc.1 + x * x);
        }
    }
    let n = graphs as f64;
    let check = |label: String, acc: (f64, f64), want_log2: f64, out: &mut Outcome| {
        out.checks += 1;
        let mean = acc.0 / n;
        let se = ((acc.1 / n - mean * mean).max(0.0) / n).sqrt();
        let want = want_log2.exp2();
        if (mean - want).abs() > 4.0 * se + 1e-9 * want.max(1.0) {
            out.fail(format!("{label}: census mean {mean:.6} vs {want:.6} (se {se:.2e}, {graphs} graphs)"));
        }
    };
    for (k, &acc) in s_acc.iter().enumerate() {
        check(format!("S_{k}"), acc, avg_spectrum(k as u32, &p)?, &mut out);
    }
    for (&(i, j, k), &acc) in &pair_acc {
        check(format!("S_({i},{j},{k})"), acc, avg_pair_spectrum(i, j, k, &p)?, &mut out);
    }
    out.details.push(format!("pair enumerator d = 2..=6, {total} placements, census over {graphs} graphs"));
    Ok(out)
}

fn ratio(num: u64, den: u64) -> Ratio {
    Ratio {
        num: BigUint::from(num),
        den: BigUint::from(den),
    }
}

type PlacementCounts = (Vec<u64>, BTreeMap<(u32, u32, u32), u64>, u64);

// Counts the socket maps under which the leading `i` variables, and pairs
// of overlapping runs, are stopping sets.
fn placement_counts(p: &EnsembleParams) -> Result<PlacementCounts, CliError> {
    let n = p.block_length()?;
    let edges = p.edges()? as usize;
    let run = |lo: u32, len: u32| (lo..lo + len).fold(0u64, |m, v| m | 1 << v);
    let mut keys = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=i.min(j) {
                if i + j - k <= n {
                    keys.push((i, j, k));
                }
            }
        }
    }
    let mut single = vec![0u64; n as usize + 1];
    let mut pairs: BTreeMap<(u32, u32, u32), u64> = keys.iter().map(|&k| (k, 0)).collect();
    let mut total = 0u64;
    let mut perm: Vec<u32> = (0..edges as u32).collect();
    let mut c = vec![0usize; edges];
    let mut visit = |perm: &[u32]| -> Result<(), CliError> {
        total += 1;
        let g = BipartiteGraph::from_permutation(p, perm.to_vec())?;
        for i in 0..=n {
            if is_stopping_mask(&g, run(0, i)) {
                single[i as usize] += 1;
            }
        }
        for &(i, j, k) in &keys {
            if is_stopping_mask(&g, run(0, i)) && is_stopping_mask(&g, run(i - k, j)) {
                *pairs.get_mut(&(i, j, k)).expect("key present") += 1;
            }
        }
        Ok(())
    };
    // Heap's algorithm
    visit(&perm)?;
    let mut i = 0;
    while i < edges {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            perm.swap(j, i);
            visit(&perm)?;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok((single, pairs, total))
}

fn decoder(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("decoder");
    let count = args.budget.pick(4, 10, 20);
    let graphs = seeded_graphs(count, args.seed, &[(3, 6, 14), (2, 4, 12)])?;
    for (s, g) in &graphs {
        let n = g.n();
        let sets: Vec<u64> = stopping_sets(g, n)?.into_iter().filter(|&m| m != 0).collect();
        let mut peeler = Peeler::new(g);
        for e in 0u64..(1 << n) {
            out.checks += 1;
            let residual = peeler.run_mask(e);
            let contains = sets.iter().any(|&st| st & !e == 0);
            if (residual != 0) != contains {
                out.fail(format!(
                    "graph seed {s}: erasure mask {e:#x} peel {} but contains a stopping set: {contains}",
                    if residual == 0 { "succeeds" } else { "fails" }
                ));
            }
            if residual & !e != 0 || !is_stopping_mask(g, residual) {
                out.fail(format!("graph seed {s}: residual {residual:#x} of {e:#x} is not a stopping subset"));
            }
        }
        let first: Vec<usize> = (0..n / 2).collect();
        let r = peel_decode(g, &first);
        out.checks += 1;
        if r.success != r.residual.is_empty() {
            out.fail(format!("graph seed {s}: inconsistent peel result {r:?}"));
        }
    }
    out.details.push(format!("{count} graphs with N <= 14, all erasure patterns"));
    Ok(out)
}

fn growth(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let mut out = Outcome::new("growth");
    // (1/n) log2 [x^{alpha n}] p^n rises towards the infimum from below
    let beta = single_mask_poly(6)?;
    let inf_u = growth_rate_uni(&beta, 2.4)?.value;
    let ns: Vec<u32> = args.budget.pick(vec![50, 100, 200], vec![100, 200, 400], vec![100, 200, 400, 800]);
    let gaps: Vec<f64> = ns
        .iter()
        .map(|&n| inf_u - log2_big(&poly_power_coeff(&beta, n, (2.4 * n as f64).round() as usize)) / n as f64)
        .collect();
    check_gaps(&mut out, "univariate 1 + psi_2(x; 6) at 2.4 n", &ns, &gaps);
    if let (Some(&n), Some(&g)) = (ns.last(), gaps.last()) {
        if n >= 400 && g > 0.05 {
            out.fail(format!("univariate gap {g:.4} > 0.05 at n = {n}"));
        }
    }
    let b = pair_mask_poly(4)?;
    let alphas = [1.2, 0.8, 1.2];
    let inf_t = growth_rate_tri(&b, alphas)?.value;
    let ns: Vec<u32> = args.budget.pick(vec![25, 50], vec![25, 50, 100], vec![50, 100, 200]);
    let gaps: Vec<f64> = ns
        .iter()
        .map(|&n| {
            let key = alphas.map(|a| (a * n as f64).round() as u32);
            inf_t - tri_power_coeff_log2(&b, n, (key[0], key[1], key[2])) / n as f64
        })
        .collect();
    check_gaps(&mut out, "trivariate B(x, y, z; 4) at (1.2, 0.8, 1.2) n", &ns, &gaps);
    Ok(out)
}

fn check_gaps(out: &mut Outcome, label: &str, ns: &[u32], gaps: &[f64]) {
    let shown: Vec<String> = ns.iter().zip(gaps).map(|(n, g)| format!("n={n}: {g:.4}")).collect();
    out.details.push(format!("{label}: gaps {}", shown.join(", ")));
    for (n, &g) in ns.iter().zip(gaps) {
        out.checks += 1;
        // the saddle-point value bounds every coefficient
        if !(g >= -1e-9) {
            out.fail(format!("{label}: coefficient exceeds the growth bound at n = {n} (gap {g})"));
        }
    }
    for w in gaps.windows(2) {
        out.checks += 1;
        if !(w[1] < w[0]) {
            out.fail(format!("{label}: gap does not shrink ({:.4} then {:.4})", w[0], w[1]));
        }
    }
}
