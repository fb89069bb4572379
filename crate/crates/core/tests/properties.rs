use proptest::prelude::*;
use whl::breakdown::{bp_weighted_median, breakdown_kernel, Adversary};
use whl::estimators::{whl2_ordered, HALF_TOLERANCE};
use whl::{
    build_pairs, estimate, hl, order_by_value, weighted_median, whl1, whl2, EstimatorKind, PairScheme, WeightedSample,
};

fn sample_strategy(max_n: usize) -> impl Strategy<Value = WeightedSample> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(-1e3f64..1e3, n),
            prop::collection::vec(0.01f64..100.0, n),
        )
            .prop_map(|(v, w)| WeightedSample::new(v, w).unwrap())
    })
}

fn scheme_strategy() -> impl Strategy<Value = PairScheme> {
    prop::sample::select(PairScheme::ALL.to_vec())
}

fn kinds_for(n: usize) -> Vec<EstimatorKind> {
    EstimatorKind::all()
        .into_iter()
        .filter(|k| n > 1 || k.scheme() != Some(PairScheme::Strict))
        .collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

/// Smallest `z` whose cumulative weight `Σ_{z_i <= z} ω_i` exceeds 1/2.
fn weighted_median_by_definition(values: &[f64], weights: &[f64]) -> f64 {
    values
        .iter()
        .copied()
        .filter(|&z| {
            let below: f64 = values
                .iter()
                .zip(weights)
                .filter(|(v, _)| **v <= z)
                .map(|(_, w)| w)
                .sum();
            below > 0.5 + HALF_TOLERANCE
        })
        .fold(f64::INFINITY, f64::min)
}

fn permutations(items: &[f64]) -> Vec<Vec<f64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

proptest! {
    #[test]
    fn affine_equivariance(s in sample_strategy(20), a in -10.0f64..10.0, b in -100.0f64..100.0) {
        prop_assume!(a.abs() > 1e-3);
        let moved = s.with_values(s.values().iter().map(|x| a * x + b).collect()).unwrap();
        for kind in kinds_for(s.len()) {
            let expected = a * estimate(&s, kind).unwrap() + b;
            let got = estimate(&moved, kind).unwrap();
            prop_assert!(close(got, expected), "{kind}: {got} vs {expected}");
        }
    }

    #[test]
    fn permutation_invariance(s in sample_strategy(15), seed in any::<u64>()) {
        let n = s.len();
        let mut order: Vec<usize> = (0..n).collect();
        // deterministic shuffle from the seed
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            order.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let shuffled = WeightedSample::new(
            order.iter().map(|&i| s.values()[i]).collect(),
            order.iter().map(|&i| s.weights()[i]).collect(),
        ).unwrap();
        for kind in kinds_for(n) {
            let a = estimate(&s, kind).unwrap();
            let b = estimate(&shuffled, kind).unwrap();
            prop_assert!(close(a, b), "{kind}: {a} vs {b}");
        }
    }

    #[test]
    fn estimates_stay_within_the_data(s in sample_strategy(25)) {
        let (lo, hi) = (s.min_value(), s.max_value());
        let slack = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
        for kind in kinds_for(s.len()) {
            let e = estimate(&s, kind).unwrap();
            prop_assert!(e >= lo - slack && e <= hi + slack, "{kind}: {e} outside [{lo}, {hi}]");
        }
    }

    #[test]
    fn equal_weights_collapse_to_hl(values in prop::collection::vec(-1e3f64..1e3, 2..30), scheme in scheme_strategy()) {
        let s = WeightedSample::equal_weights(values).unwrap();
        let h = hl(&s, scheme).unwrap();
        prop_assert_eq!(whl1(&s, scheme).unwrap().to_bits(), h.to_bits());
        if scheme.pair_count(s.len()) % 2 == 1 {
            prop_assert_eq!(whl2(&s, scheme).unwrap().to_bits(), h.to_bits());
        }
    }

    #[test]
    fn weighted_median_matches_definition(
        pairs in prop::collection::vec((0u8..15, 0.01f64..10.0), 1..60),
    ) {
        let values: Vec<f64> = pairs.iter().map(|p| f64::from(p.0)).collect();
        let raw: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let weights = whl::sample::normalize_weights(&raw).unwrap();
        let fast = weighted_median(&order_by_value(&values, &weights).unwrap()).unwrap();
        prop_assert_eq!(fast, weighted_median_by_definition(&values, &weights));
    }

    #[test]
    fn whl2_routes_agree(s in sample_strategy(20), scheme in scheme_strategy()) {
        prop_assume!(scheme.pair_count(s.len()) > 0);
        prop_assert_eq!(whl2(&s, scheme).unwrap().to_bits(), whl2_ordered(&s, scheme).unwrap().to_bits());
    }

    #[test]
    fn pair_weights_sum_to_one(s in sample_strategy(30), scheme in scheme_strategy()) {
        let pairs = build_pairs(&s, scheme);
        prop_assert_eq!(pairs.len(), scheme.pair_count(s.len()));
        if !pairs.is_empty() {
            let total: f64 = pairs.weights().iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
            prop_assert!(pairs.weights().iter().all(|&w| w > 0.0));
        }
    }

    #[test]
    fn cumulative_weight_shapes(raw in prop::collection::vec(0.01f64..10.0, 1..40)) {
        // ascending weights give a convex cumulative curve, descending a concave one
        let weights = whl::sample::normalize_weights(&raw).unwrap();
        let mut up = weights.clone();
        up.sort_by(f64::total_cmp);
        let down: Vec<f64> = up.iter().rev().copied().collect();
        let steps = |w: &[f64]| w.windows(2).map(|p| p[1] - p[0]).collect::<Vec<f64>>();
        prop_assert!(steps(&up).iter().all(|&d| d >= 0.0));
        prop_assert!(steps(&down).iter().all(|&d| d <= 0.0));
        let lower = bp_weighted_median(&weights, Adversary::WorstCase).unwrap();
        let upper = bp_weighted_median(&weights, Adversary::BestCase).unwrap();
        prop_assert!(lower <= upper);
        prop_assert!((0.0..1.0).contains(&lower) && upper < 1.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adversary_orders_bracket_every_permutation(raw in prop::collection::vec(0.01f64..10.0, 1..=8)) {
        let weights = whl::sample::normalize_weights(&raw).unwrap();
        let lower = bp_weighted_median(&weights, Adversary::WorstCase).unwrap();
        let upper = bp_weighted_median(&weights, Adversary::BestCase).unwrap();
        for order in permutations(&weights) {
            let k = breakdown_kernel(&order).unwrap();
            prop_assert!(lower <= k && k <= upper, "{k} outside [{lower}, {upper}]");
        }
    }
}
