use ldpc_exponent_core::confidence::confidence_from_beta;
use ldpc_exponent_core::enumerators::{avg_spectrum, p_s1_exact, EnsembleParams};
use ldpc_exponent_core::exponent::{combine, r_choice};
use ldpc_exponent_core::genfunc::{growth_rate_uni, mask_allows, pair_mask_poly, poly_power_coeff, single_mask_poly};
use ldpc_exponent_core::lab::{
    dawson_check, exact_block_error, is_stopping_mask, is_stopping_set, peel_decode, sample_graph, EventFamily,
};
use ldpc_exponent_core::numerics::{entropy, h2, log2_big};
use proptest::prelude::*;

fn small_params() -> impl Strategy<Value = EnsembleParams> {
    prop_oneof![
        (2u32..=6).prop_map(|n| EnsembleParams::with_length(2, 4, 2 * n).unwrap()),
        (1u32..=3).prop_map(|n| EnsembleParams::with_length(3, 6, 4 * n).unwrap()),
        (2u32..=4).prop_map(|n| EnsembleParams::with_length(2, 3, 3 * n).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entropy_is_bounded(a in 0.0f64..1.0, b in 0.0f64..1.0, c in 0.0f64..1.0) {
        let s = a + b + c;
        let parts = if s > 1.0 { [a / s, b / s, c / s] } else { [a, b, c] };
        let h = entropy(&parts).unwrap();
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= 2.0 + 1e-12);
    }

    #[test]
    fn binary_entropy_matches_general(p in 0.0f64..=1.0) {
        prop_assert!((entropy(&[p]).unwrap() - h2(p)).abs() < 1e-12);
        prop_assert!((h2(p) - h2(1.0 - p)).abs() < 1e-12);
    }

    #[test]
    fn mask_is_symmetric(d in 2u32..=8, a in 0u32..=8, b in 0u32..=8, e in 0u32..=8) {
        prop_assume!(a + b + e <= d);
        prop_assert_eq!(mask_allows(a, b, e, d), mask_allows(e, b, a, d));
        prop_assert_eq!(mask_allows(a, b, e, d), a + b != 1 && b + e != 1);
    }

    #[test]
    fn pair_poly_collapses_to_single(d in 2u32..=7) {
        // with S2 empty the pair enumerator is the single enumerator in x
        let b = pair_mask_poly(d).unwrap();
        let single = single_mask_poly(d).unwrap();
        let axis = b.set_zero(&[1, 2]).axis(0);
        prop_assert_eq!(axis, single);
    }

    #[test]
    fn growth_bounds_finite_coefficients(d in 3u32..=7, frac in 0.1f64..0.9, n in 20u32..60) {
        // a power coefficient never exceeds the Chernoff bound 2^{n g}
        let p = single_mask_poly(d).unwrap();
        let k = ((frac * d as f64) * n as f64).round() as usize;
        let alpha = k as f64 / n as f64;
        let g = growth_rate_uni(&p, alpha).unwrap().value;
        let coeff = log2_big(&poly_power_coeff(&p, n, k)) / n as f64;
        prop_assert!(coeff <= g + 1e-9, "{} > {}", coeff, g);
    }

    #[test]
    fn peel_residual_is_stopping(params in small_params(), seed in 0u64..1000, mask in any::<u64>()) {
        let g = sample_graph(&params, seed).unwrap();
        let erased: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        let r = peel_decode(&g, &erased);
        prop_assert!(is_stopping_set(&g, &r.residual));
        prop_assert!(r.residual.iter().all(|v| erased.contains(v)));
        prop_assert_eq!(r.success, r.residual.is_empty());
    }

    #[test]
    fn stopping_sets_closed_under_union(params in small_params(), seed in 0u64..1000, a in any::<u64>(), b in any::<u64>()) {
        let g = sample_graph(&params, seed).unwrap();
        let full = (1u64 << g.n()) - 1;
        let (ra, rb) = (peel_residual(&g, a & full), peel_residual(&g, b & full));
        prop_assert!(is_stopping_mask(&g, ra | rb));
    }

    #[test]
    fn block_error_is_monotone(params in small_params(), seed in 0u64..500, d1 in 0.0f64..1.0, d2 in 0.0f64..1.0) {
        let g = sample_graph(&params, seed).unwrap();
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let (pl, ph) = (exact_block_error(&g, lo).unwrap(), exact_block_error(&g, hi).unwrap());
        prop_assert!((0.0..=1.0).contains(&pl));
        prop_assert!(pl <= ph + 1e-12);
    }

    #[test]
    fn dawson_holds_on_random_families(
        events in prop::collection::vec(any::<u64>(), 1..7),
        universe in 1usize..=64,
    ) {
        let mask = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
        let events: Vec<u64> = events.into_iter().map(|e| e & mask).collect();
        let fam = EventFamily::new(universe, events).unwrap();
        for p in 0..universe {
            let chk = dawson_check(&fam, p).unwrap();
            prop_assert!(chk.holds(), "point {} violates: {:?}", p, chk);
        }
    }

    #[test]
    fn combine_never_below_e1(e1 in 0.0f64..2.0, e2 in 0.0f64..2.0) {
        prop_assert!(combine(e1, e2, 1e-6) >= e1);
    }

    #[test]
    fn r_choice_grows_with_gap(e1 in 0.0f64..1.0, gap in 0.0f64..0.5, more in 0.0f64..0.5, n in 1u64..60) {
        let cap = 1u64 << 53;
        let a = r_choice(e1, e1 - gap, n, 0.01, cap);
        let b = r_choice(e1, e1 - gap - more, n, 0.01, cap);
        prop_assert!(a.r >= 1 && a.r <= cap);
        prop_assert!(b.r >= a.r);
        prop_assert_eq!(r_choice(e1, e1 + gap, n, 0.01, cap).r, 1);
    }

    #[test]
    fn confidence_is_clamped(beta in -10.0f64..10.0, slack in 0.1f64..10.0) {
        let c = confidence_from_beta(beta, slack);
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn placement_probability_is_a_probability(i in 0u32..=12) {
        let p = EnsembleParams::with_length(3, 6, 12).unwrap();
        let v = p_s1_exact(i, &p).unwrap().to_f64();
        prop_assert!((0.0..=1.0).contains(&v));
        // never more stopping sets on average than subsets
        let s = avg_spectrum(i, &p).unwrap();
        prop_assert!(s <= 12.0 + 1e-9);
    }
}

fn peel_residual(g: &ldpc_exponent_core::lab::BipartiteGraph, mask: u64) -> u64 {
    let erased: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
    peel_decode(g, &erased).residual.iter().fold(0, |m, &v| m | 1 << v)
}
