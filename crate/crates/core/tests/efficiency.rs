use rayon::prelude::*;
use symtest::distributions::{Alternative, AlternativeFamily, NullDistribution};
use symtest::efficiency::*;
use symtest::quadrature::{composite, gl16};
use symtest::rng::StreamFactory;
use symtest::spectral::{KernelPhi, KernelXi};

use rand::Rng;

fn fam(alt: &str, beta: Option<f64>, base: NullDistribution) -> AlternativeFamily {
    AlternativeFamily::new(Alternative::parse(alt, beta).unwrap(), base).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

/// Mean and standard error of `g(X, Y)` over `n` independent pairs from the null.
fn mc_pairs<G>(dist: NullDistribution, n: u64, seed: u64, g: G) -> (f64, f64)
where
    G: Fn(f64, f64) -> f64 + Sync,
{
    let f = StreamFactory::new(seed);
    let chunks = 1000u64;
    let per = n / chunks;
    let (s, s2) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = f.stream(c);
            let (mut s, mut s2) = (0.0, 0.0);
            for _ in 0..per {
                let x = dist.sample_one(&mut rng);
                let y = dist.sample_one(&mut rng);
                let v = g(x, y);
                s += v;
                s2 += v * v;
            }
            (s, s2)
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let total = (per * chunks) as f64;
    let mean = s / total;
    let var = s2 / total - mean * mean;
    (mean, (var / total).sqrt())
}

#[test]
fn uniform_g1_bj() {
    let b = b_j_coefficient(&fam("g1", None, NullDistribution::Uniform)).unwrap();
    assert!((b - 0.348).abs() < 0.002, "{b}");
}

#[test]
fn bj_matches_monte_carlo() {
    let d = NullDistribution::Uniform;
    let fm = fam("g1", None, d);
    let b = b_j_coefficient(&fm).unwrap();
    let phi = KernelPhi::new(d);
    let (mean, se) = mc_pairs(d, 10_000_000, 41, |x, y| {
        3.0 * phi.evaluate(x, y) * fm.score(x) * fm.score(y) / (d.pdf(x) * d.pdf(y))
    });
    assert!((mean - b).abs() < 3.0 * se, "{b} vs {mean} ± {se}");
}

#[test]
fn odd_part_of_the_bj_integrand_cancels() {
    let d = NullDistribution::Uniform;
    let fm = fam("g3", None, d);
    let phi = KernelPhi::new(d);
    let integrand = |x: f64, y: f64| phi.evaluate(x, y) * fm.score(x) * fm.score(y);
    let bp = [-0.5, 0.0, 0.5];
    let odd = composite(gl16(), -1.0, 1.0, &bp, 64, |x| {
        composite(gl16(), -1.0, 1.0, &[-x, x, 0.0], 64, |y| {
            0.5 * (integrand(x, y) - integrand(-x, -y))
        })
    });
    assert!(odd.abs() < 1e-8, "{odd}");
}

#[test]
fn uniform_g3_profile_closed_form() {
    let fm = fam("g3", None, NullDistribution::Uniform);
    for t in [0.3, 0.708, 1.5] {
        let v = b_k_profile(&fm, t).unwrap();
        let exact = std::f64::consts::PI * (2.0 - t) * (std::f64::consts::PI * t / 2.0).sin();
        assert!((v.abs() - exact).abs() < 1e-4, "t={t}: {v} vs {exact}");
    }
}

#[test]
fn profile_vanishes_as_threshold_shrinks() {
    for d in [NullDistribution::Uniform, NullDistribution::Normal, NullDistribution::Laplace] {
        for a in standard_alternatives(d) {
            let Ok(fm) = AlternativeFamily::new(a, d) else { continue };
            let v = b_k_profile(&fm, 1e-6).unwrap();
            assert!(v.abs() < 1e-4, "{d:?}/{}: {v}", fm.label());
        }
    }
}

fn profile_mc(fm: &AlternativeFamily, t: f64, seed: u64) -> (f64, f64) {
    let d = fm.base;
    let xi = KernelXi::new(t);
    mc_pairs(d, 10_000_000, seed, |x, y| {
        xi.evaluate(x, y) as f64 * fm.score(x) * fm.score(y) / (d.pdf(x) * d.pdf(y))
    })
}

#[test]
fn profile_matches_monte_carlo_uniform_g1() {
    let fm = fam("g1", None, NullDistribution::Uniform);
    let v = b_k_profile(&fm, 0.5).unwrap();
    let (mean, se) = profile_mc(&fm, 0.5, 77);
    assert!((mean - v).abs() < 3.0 * se, "{v} vs {mean} ± {se}");
}

#[test]
fn profile_matches_monte_carlo_on_random_cells() {
    let cells: Vec<(NullDistribution, Alternative)> = [
        NullDistribution::Uniform,
        NullDistribution::Normal,
        NullDistribution::Logistic,
        NullDistribution::Laplace,
    ]
    .into_iter()
    .flat_map(|d| standard_alternatives(d).into_iter().map(move |a| (d, a)))
    .collect();
    let mut rng = StreamFactory::new(2024).stream(0);
    for k in 0..5 {
        let (d, a) = cells[rng.random_range(0..cells.len())];
        let fm = AlternativeFamily::new(a, d).unwrap();
        let t = rng.random_range(0.1..1.0) * 2.0 * d.quantile(0.9);
        let v = b_k_profile(&fm, t).unwrap();
        let (mean, se) = profile_mc(&fm, t, 100 + k);
        assert!((mean - v).abs() < 3.0 * se, "{d:?}/{} t={t}: {v} vs {mean} ± {se}", fm.label());
    }
}

#[test]
fn uniform_j_row() {
    let d = NullDistribution::Uniform;
    let expected = [("g1", 0.611), ("g2", 0.307), ("g3", 4.788), ("g4", 0.691)];
    for (alt, want) in expected {
        let s = slope_jn(&fam(alt, None, d)).unwrap();
        assert!(rel(s.index, want) < 0.02, "{alt}: {} vs {want}", s.index);
    }
    let g1 = slope_jn(&fam("g1", None, d)).unwrap();
    assert!((g1.index - 0.611).abs() < 0.005, "{}", g1.index);
    let g3 = slope_jn(&fam("g3", None, d)).unwrap();
    assert!((g3.index - 4.788).abs() < 0.05, "{}", g3.index);
}

#[test]
fn normal_g7_both_statistics() {
    let fm = fam("g7", None, NullDistribution::Normal);
    let j = slope_jn(&fm).unwrap().index;
    let k = slope_kn(&fm).unwrap().index;
    assert!(rel(j, 0.461) < 0.02, "{j}");
    assert!(rel(k, 0.490) < 0.02, "{k}");
}

#[test]
fn normal_g5_j_with_tabulated_eigenvalue() {
    let fm = fam("g5", None, NullDistribution::Normal);
    let tails = TailConstants::new(0.138, TailConstants::for_null(NullDistribution::Normal).unwrap().kappa0).unwrap();
    let s = slope_jn_with(&fm, &tails).unwrap();
    assert!((s.index - 0.730).abs() < 0.01, "{}", s.index);
}

#[test]
fn uniform_g3_k_slope() {
    let s = slope_kn(&fam("g3", None, NullDistribution::Uniform)).unwrap();
    assert!((s.b_coefficient - 3.639).abs() < 0.005, "{}", s.b_coefficient);
    assert!((s.argmax_t.unwrap() - 0.708).abs() < 0.005, "{:?}", s.argmax_t);
    assert!((s.index - 4.752).abs() < 0.05, "{}", s.index);
}

#[test]
fn uniform_g1_k_and_relative_efficiency() {
    let fm = fam("g1", None, NullDistribution::Uniform);
    let k = slope_kn(&fm).unwrap();
    assert!((k.index - 0.596).abs() < 0.01, "{}", k.index);
    let j = slope_jn(&fm).unwrap();
    let ratio = j.index / k.index;
    assert!((ratio - 0.611 / 0.596).abs() < 0.02, "{ratio}");
}

#[test]
fn laplace_g6_k_slope() {
    let s = slope_kn(&fam("g6", Some(1.0), NullDistribution::Laplace)).unwrap();
    assert!((s.index - 0.529).abs() < 0.01, "{}", s.index);
}

#[test]
fn slope_results_are_consistent() {
    for d in [NullDistribution::Uniform, NullDistribution::Logistic] {
        for a in standard_alternatives(d) {
            let fm = AlternativeFamily::new(a, d).unwrap();
            let j = slope_jn(&fm).unwrap();
            assert!(j.index.is_finite() && j.index >= 0.0);
            assert!((j.index - j.tail_constant * j.b_coefficient.abs()).abs() < 1e-12);
            let k = slope_kn(&fm).unwrap();
            assert!(k.index.is_finite() && k.index >= 0.0);
            assert!((k.index - k.tail_constant * k.b_coefficient).abs() < 1e-12);
            assert!(k.argmax_t.unwrap() > 0.0);
        }
    }
}

#[test]
fn index_table_records_failures_per_cell() {
    let rows = index_table(&[NullDistribution::Uniform], Some(&[Alternative::G1, Alternative::G5]));
    assert_eq!(rows.len(), 2);
    assert!(rows[0].jn.is_some() && rows[0].kn.is_some());
    assert!(rows[1].jn.is_none() && !rows[1].errors.is_empty());
    let mut buf = Vec::new();
    write_index_csv(&rows, &mut buf, 4).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("null,alternative,c_Jn,c_Kn"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn doubling_nodes_barely_moves_the_indices() {
    let cells = [
        ("g1", None, NullDistribution::Uniform),
        ("g3", None, NullDistribution::Normal),
        ("g6", Some(1.0), NullDistribution::Laplace),
        ("g2", None, NullDistribution::Logistic),
    ];
    for (alt, beta, d) in cells {
        let fm = fam(alt, beta, d);
        let j1 = b_j_with_panels(&fm, 64).unwrap();
        let j2 = b_j_with_panels(&fm, 128).unwrap();
        assert!(rel(j1, j2) < 0.005, "{alt}/{d:?} J: {j1} vs {j2}");
        let t = slope_kn(&fm).unwrap().argmax_t.unwrap();
        let k1 = b_k_profile_with_panels(&fm, t, 96, 512).unwrap();
        let k2 = b_k_profile_with_panels(&fm, t, 192, 1024).unwrap();
        assert!(rel(k1, k2) < 0.005, "{alt}/{d:?} K: {k1} vs {k2}");
    }
}

#[test]
fn score_tails_beyond_truncation_are_negligible() {
    for d in [NullDistribution::Normal, NullDistribution::Logistic, NullDistribution::Laplace] {
        let a = d.truncation_a();
        for alt in standard_alternatives(d) {
            let fm = AlternativeFamily::new(alt, d).unwrap();
            let bp = fm.knots();
            let inside = composite(gl16(), -a, a, &bp, 400, |x| fm.score(x).abs());
            let tail = composite(gl16(), a, 4.0 * a, &[], 400, |x| fm.score(x).abs())
                + composite(gl16(), -4.0 * a, -a, &[], 400, |x| fm.score(x).abs());
            assert!(tail < 1e-6 * inside, "{d:?}/{}: {tail} vs {inside}", fm.label());
        }
    }
}

#[test]
fn profile_is_lipschitz_on_the_grid() {
    let lipschitz = |fm: &AlternativeFamily, grid: usize| {
        let two_a = 2.0 * fm.base.spectral_bound().unwrap();
        let dt = two_a / grid as f64;
        let v: Vec<f64> = (1..=grid).map(|k| b_k_profile(fm, dt * k as f64).unwrap()).collect();
        v.windows(2).map(|w| (w[1] - w[0]).abs() / dt).fold(0.0, f64::max)
    };
    for fm in [
        fam("g3", None, NullDistribution::Uniform),
        fam("g1", None, NullDistribution::Normal),
    ] {
        let c1 = lipschitz(&fm, 256);
        let c2 = lipschitz(&fm, 512);
        assert!(c1.is_finite() && c2 < 1.5 * c1, "{}: {c1} {c2}", fm.label());
    }
}
