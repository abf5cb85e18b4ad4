//! The null limit of n·J_n as a weighted sum of centred chi-squares,
//! compared with the finite-sample statistic.

use symtest::distributions::NullDistribution;
use symtest::rng::StreamFactory;
use symtest::simulation::empirical_quantile;
use symtest::spectral::{limit_eigenvalues, sample_limit_null_jn};
use symtest::statistics::compute_jn;

fn main() -> symtest::Result<()> {
    let dist = NullDistribution::Normal;
    let ev = limit_eigenvalues(dist, 30)?;
    println!("top weights: {:?}", ev[..5].iter().map(|v| format!("{v:.5}")).collect::<Vec<_>>());

    let limit = sample_limit_null_jn(dist, 30, 200_000, 1)?;
    let f = StreamFactory::new(2);
    let n = 100;
    let finite: Vec<f64> = (0..4000u64)
        .map(|r| n as f64 * compute_jn(&dist.sample(n, &mut f.stream(r))).unwrap())
        .collect();

    println!("{:>6} {:>10} {:>10}", "p", "limit", "n=100");
    for p in [0.05, 0.25, 0.5, 0.75, 0.95, 0.99] {
        println!("{p:>6} {:>10.4} {:>10.4}", empirical_quantile(&limit, p), empirical_quantile(&finite, p));
    }
    Ok(())
}
