//! The seven alternative families on a common base: cdf, density and score
//! at a few points, and a sample mean drifting with theta.

use symtest::distributions::{Alternative, AlternativeFamily, NullDistribution};
use symtest::rng::StreamFactory;

fn main() -> symtest::Result<()> {
    let base = NullDistribution::Logistic;
    let alts = [
        Alternative::G1,
        Alternative::G2,
        Alternative::G3,
        Alternative::G4 { beta: 3.0 },
        Alternative::G5,
        Alternative::G6 { beta: 1.0 },
        Alternative::G7,
    ];
    println!("{:<6} {:>14} {:>9} {:>9} {:>9} {:>11}", "alt", "theta range", "G(0)", "g(0)", "h(1)", "mean(0.3)");
    for alt in alts {
        let fam = AlternativeFamily::new(alt, base)?;
        let (lo, hi) = fam.theta_range();
        let theta = 0.3f64.min(hi);
        let x = fam.sample(theta, 20_000, &mut StreamFactory::new(4).stream(0))?;
        let mean = x.iter().sum::<f64>() / x.len() as f64;
        println!(
            "{:<6} {:>14} {:>9.5} {:>9.5} {:>9.5} {:>11.4}",
            fam.alternative.label(),
            format!("[{lo}, {hi}]"),
            fam.cdf_at(0.0, theta),
            fam.density_at(0.0, theta),
            fam.score(1.0),
            mean
        );
    }
    Ok(())
}
