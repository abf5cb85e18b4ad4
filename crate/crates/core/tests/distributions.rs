use symtest::distributions::{sample_alternative, sample_null, Alternative, AlternativeFamily, NullDistribution};
use symtest::quadrature::{composite, gl16};
use symtest::rng::StreamFactory;

/// sup |F_n - F| for a sample against a continuous cdf.
fn ks_distance(mut x: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    x.sort_by(|a, b| a.total_cmp(b));
    let n = x.len() as f64;
    x.iter()
        .enumerate()
        .map(|(i, &v)| {
            let f = cdf(v);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

// 99.9% point of the one-sample KS distance is about 1.95/sqrt(n)
const N: usize = 20_000;
fn ks_bound() -> f64 {
    1.95 / (N as f64).sqrt()
}

fn families() -> Vec<(AlternativeFamily, f64)> {
    let alts = [
        (Alternative::G1, 0.7),
        (Alternative::G2, 0.8),
        (Alternative::G3, 0.25),
        (Alternative::G4 { beta: 3.0 }, 0.4),
        (Alternative::G5, 0.6),
        (Alternative::G6 { beta: 1.0 }, 0.3),
        (Alternative::G7, 1.5),
    ];
    let mut out = Vec::new();
    for base in NullDistribution::ALL {
        for (alt, theta) in alts {
            out.push((AlternativeFamily::new(alt, base).unwrap(), theta));
        }
    }
    out
}

#[test]
fn null_samplers_follow_their_cdf() {
    let f = StreamFactory::new(1);
    for (k, d) in NullDistribution::ALL.into_iter().enumerate() {
        let x = sample_null(d, N, &mut f.stream(k as u64)).unwrap().into_inner();
        let dist = ks_distance(x, |v| d.cdf(v));
        assert!(dist < ks_bound(), "{d}: {dist}");
    }
}

#[test]
fn alternative_samplers_follow_their_cdf() {
    let f = StreamFactory::new(2);
    for (k, (fam, theta)) in families().into_iter().enumerate() {
        let x = sample_alternative(&fam, theta, N, &mut f.stream(k as u64)).unwrap().into_inner();
        let dist = ks_distance(x, |v| fam.cdf_at(v, theta));
        assert!(dist < ks_bound(), "{} θ={theta}: {dist}", fam.label());
    }
}

#[test]
fn zero_theta_is_the_null() {
    for (fam, _) in families() {
        for x in [-2.5, -0.4, 0.0, 0.3, 1.7] {
            let g = fam.cdf_at(x, 0.0);
            assert!((g - fam.base.cdf(x)).abs() < 1e-12, "{} at {x}", fam.label());
        }
    }
}

#[test]
fn density_is_the_cdf_derivative() {
    let h = 1e-5;
    for (fam, theta) in families() {
        for x in [-1.3, -0.55, 0.2, 0.8, 2.4] {
            let fd = (fam.cdf_at(x + h, theta) - fam.cdf_at(x - h, theta)) / (2.0 * h);
            let d = fam.density_at(x, theta);
            // the uniform density jumps at ±1 and those points are avoided above
            assert!((fd - d).abs() < 1e-5 * (1.0 + d), "{} θ={theta} x={x}: {fd} vs {d}", fam.label());
        }
    }
}

#[test]
fn score_is_the_theta_derivative_of_the_density() {
    let h = 1e-6;
    for (fam, _) in families() {
        if matches!(fam.alternative, Alternative::G5) && fam.base == NullDistribution::Uniform {
            continue;
        }
        let (lo, _) = fam.theta_range();
        for x in [-0.9, -0.3, 0.45, 0.7] {
            // one-sided at the boundary of the admissible range
            let fd = if lo == 0.0 {
                (fam.density_at(x, h) - fam.density_at(x, 0.0)) / h
            } else {
                (fam.density_at(x, h) - fam.density_at(x, -h)) / (2.0 * h)
            };
            let s = fam.score(x);
            assert!((fd - s).abs() < 1e-4 * (1.0 + s.abs()), "{} x={x}: {fd} vs {s}", fam.label());
        }
    }
}

#[test]
fn skew_cdf_matches_integrated_density() {
    for base in NullDistribution::SPECTRAL {
        let fam = AlternativeFamily::new(Alternative::G7, base).unwrap();
        let lo = -base.truncation_a();
        for x in [-0.5, 0.0, 0.9] {
            let direct = composite(gl16(), lo, x, &[0.0], 200, |u| fam.density_at(u, 0.8));
            assert!((direct - fam.cdf_at(x, 0.8)).abs() < 1e-8, "{base} x={x}");
        }
    }
}
