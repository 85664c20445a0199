use ldpc_exponent_core::confidence::confidence_at;
use ldpc_exponent_core::enumerators::{alpha0, avg_spectrum, growth_avg_spectrum, EnsembleParams};
use ldpc_exponent_core::exponent::{BoundConfig, Branch, ExponentEvaluator, ExponentProfile};
use ldpc_exponent_core::lab::{
    census, exact_block_error, failure_counts, mc_block_error, pair_count_identity, sample_graph,
    block_error_from_counts,
};

#[test]
fn pair_count_identity_holds_on_sampled_graphs() {
    for seed in 0..6 {
        let g = sample_graph(&EnsembleParams::with_length(2, 4, 10).unwrap(), seed).unwrap();
        for l in 0..=10 {
            let id = pair_count_identity(&g, l).unwrap();
            assert!(id.holds(), "seed {seed} l {l}: {} vs {}", id.lhs, id.rhs);
        }
    }
}

#[test]
fn failure_counts_reproduce_block_error() {
    let g = sample_graph(&EnsembleParams::with_length(3, 6, 16).unwrap(), 3).unwrap();
    let counts = failure_counts(&g).unwrap();
    assert_eq!(counts.len(), 17);
    assert_eq!(counts[0], 0);
    assert_eq!(counts[16], 1);
    let pe = exact_block_error(&g, 0.3).unwrap();
    assert!((pe - block_error_from_counts(&counts, 0.3)).abs() < 1e-15);
    let mc = mc_block_error(&g, 0.3, 200_000, 17).unwrap();
    assert!((mc.estimate - pe).abs() < 4.0 * mc.stderr + 1e-6);
}

#[test]
fn census_size_one_and_full_set() {
    // the full variable set is always stopping; no single variable can be
    // when every check sees it at most once
    let p = EnsembleParams::with_length(3, 6, 12).unwrap();
    let g = sample_graph(&p, 8).unwrap();
    let spec = census(&g, 12).unwrap();
    assert_eq!(spec.s(0), 1);
    assert_eq!(spec.s(12), 1);
    assert_eq!(spec.pair(12, 12, 12), 1);
}

#[test]
fn averaged_spectrum_approaches_growth_rate() {
    let (c, d) = (3, 6);
    let eta = 0.25;
    let g = growth_avg_spectrum(eta, c, d).unwrap();
    let mut gaps = Vec::new();
    for n in [48u32, 96, 192] {
        let p = EnsembleParams::with_length(c, d, n).unwrap();
        let i = (eta * n as f64).round() as u32;
        gaps.push((g - avg_spectrum(i, &p).unwrap() / n as f64).abs());
    }
    assert!(gaps[2] < gaps[1] && gaps[1] < gaps[0], "{gaps:?}");
    assert!(gaps[2] < 0.05, "{gaps:?}");
}

#[test]
fn alpha0_is_zero_of_growth() {
    let a = alpha0(3, 6).unwrap();
    assert!(a.found);
    assert!(growth_avg_spectrum(a.value * 0.5, 3, 6).unwrap() < 0.0);
    assert!(growth_avg_spectrum(a.value * 2.0, 3, 6).unwrap() > 0.0);
}

#[test]
fn profile_points_are_consistent_with_their_parts() {
    let p = EnsembleParams::new(3, 6).unwrap();
    let cfg = BoundConfig {
        epsilon_grid: 40,
        eta_grid: 60,
        pair_grid: 20,
        ..BoundConfig::for_params(&p).unwrap()
    };
    let profile = ExponentProfile::compute(&p, &cfg).unwrap();
    let ev = ExponentEvaluator::new(&p, &cfg).unwrap();
    for delta in [0.02, 0.1, 0.3, 0.6] {
        let pt = profile.point(delta).unwrap();
        assert!(pt.error.is_none());
        assert!(pt.bound >= 0.0);
        match pt.branch {
            Branch::Analytic => {
                // the bound equals the objective at eps*
                let s = ev.sample(pt.eps_star).unwrap();
                let val = pt.eps_star * delta.log2() + (1.0 - pt.eps_star) * (1.0 - delta).log2() - s.e;
                assert!((pt.bound + val).abs() < 5e-3, "delta {delta}: {} vs {}", pt.bound, -val);
            }
            Branch::Deterministic => assert!(pt.eps_star >= 0.5 - 1e-9),
        }
        let conf = confidence_at(pt.eta0, 3, 6);
        assert!((conf.confidence - pt.confidence).abs() < 1e-12 || !pt.flags.is_empty());
    }
}
