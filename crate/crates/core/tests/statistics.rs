use proptest::prelude::*;
use rand::Rng;

use symtest::distributions::NullDistribution;
use symtest::rng::StreamFactory;
use symtest::statistics::*;

fn sample_strategy(max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-50.0f64..50.0, 3..=max_n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fast_jn_equals_triple_enumeration(x in sample_strategy(30)) {
        prop_assert_eq!(compute_jn(&x).unwrap(), jn_brute_force(&x).unwrap());
    }

    #[test]
    fn fast_kn_equals_grid_oracle(x in sample_strategy(25)) {
        let grid: Vec<f64> = (0..200).map(|k| k as f64 * 0.5).collect();
        let fast = compute_kn(&x).unwrap();
        let oracle = kn_grid_oracle(&x, &grid).unwrap();
        prop_assert!((fast - oracle).abs() < 1e-12, "{} vs {}", fast, oracle);
    }

    #[test]
    fn scale_and_sign_invariance(x in sample_strategy(30), k in -6i32..6) {
        let c = 2f64.powi(k);
        let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
        let negated: Vec<f64> = x.iter().map(|v| -v).collect();
        for stat in Statistic::ALL {
            let base = stat.evaluate(&x).unwrap();
            prop_assert_eq!(stat.evaluate(&scaled).unwrap(), base);
            prop_assert_eq!(stat.evaluate(&negated).unwrap(), base);
        }
    }

    #[test]
    fn values_stay_in_range(x in sample_strategy(30)) {
        let j = compute_jn(&x).unwrap();
        prop_assert!((-1.0..=1.0).contains(&j));
        let k = compute_kn(&x).unwrap();
        prop_assert!((0.0..=1.0).contains(&k));
        let ks = compute_ks_symmetry(&x).unwrap();
        prop_assert!((0.0..=1.0).contains(&ks));
    }
}

#[test]
fn invariance_under_generic_positive_scale() {
    let f = StreamFactory::new(42);
    for r in 0..50 {
        let mut rng = f.stream(r);
        let x = NullDistribution::Logistic.sample(25, &mut rng);
        let c: f64 = rng.random_range(0.1..10.0);
        let y: Vec<f64> = x.iter().map(|v| v * c).collect();
        assert_eq!(compute_jn(&x).unwrap(), compute_jn(&y).unwrap());
        assert_eq!(compute_kn(&x).unwrap(), compute_kn(&y).unwrap());
    }
}

#[test]
fn positive_samples_push_both_statistics_to_extremes() {
    // all pairs have |Xi - Xj| < |Xi + Xj|: G_n dominates H_n everywhere
    let x: Vec<f64> = (1..=20).map(|k| k as f64 * 0.37).collect();
    assert!(compute_jn(&x).unwrap() > 0.2);
    assert!(compute_kn(&x).unwrap() > 0.5);
}

#[test]
fn small_samples_rejected() {
    assert!(matches!(compute_jn(&[1.0, 2.0]), Err(symtest::Error::SampleTooSmall { .. })));
    assert!(compute_kn(&[1.0]).is_err());
    assert!(compute_jn(&[1.0, f64::NAN, 2.0]).is_err());
}

#[test]
fn sign_critical_values_match_exact_binomial() {
    let c50 = sign_critical_value(50, 0.05).unwrap();
    assert_eq!(c50.deviation, 8.0);
    assert!((c50.size - 0.0328).abs() < 1e-4, "{}", c50.size);
    let c20 = sign_critical_value(20, 0.05).unwrap();
    assert_eq!(c20.deviation, 5.0);
    assert!((c20.size - 0.0414).abs() < 1e-4, "{}", c20.size);
}

#[test]
fn bootstrap_is_thread_count_independent() {
    let mut rng = StreamFactory::new(9).stream(0);
    let x = NullDistribution::Normal.sample(60, &mut rng);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| bootstrap_p_value(&x, Statistic::Jn, 500, 77).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn exact_ks_region_matches_sign_enumeration() {
    let n = 20usize;
    // every sign pattern on |x| = n, n-1, ..., 1 is one equally likely sample
    let mut counts = vec![0u64; n + 1];
    for mask in 0u32..(1 << n) {
        let x: Vec<f64> = (0..n)
            .map(|i| {
                let mag = (n - i) as f64;
                if mask >> i & 1 == 1 { mag } else { -mag }
            })
            .collect();
        let d = compute_ks_symmetry(&x).unwrap();
        counts[(d * n as f64).round() as usize] += 1;
    }
    let total = (1u64 << n) as f64;
    let tail = |m: usize| counts[m..].iter().sum::<u64>() as f64 / total;
    let c = ks_critical_value(n, 0.05).unwrap();
    assert!(tail(c.count) <= 0.05 && tail(c.count - 1) > 0.05);
    assert!((c.size - tail(c.count)).abs() < 1e-12);
}
