//! Test a sample for symmetry about zero with all four statistics.
//!
//! ```text
//! cargo run --example symmetry_test -- [theta]
//! ```

use symtest::distributions::{Alternative, AlternativeFamily, NullDistribution};
use symtest::rng::StreamFactory;
use symtest::statistics::{bootstrap_p_value, Statistic};

fn main() -> symtest::Result<()> {
    let theta: f64 = std::env::args().nth(1).map(|s| s.parse().expect("theta")).unwrap_or(1.0);
    let shifted = AlternativeFamily::new(Alternative::G5, NullDistribution::Normal)?;
    let x = shifted.sample(theta, 60, &mut StreamFactory::new(11).stream(0))?;

    println!("n = {}, location shift {theta}", x.len());
    for stat in Statistic::ALL {
        let r = bootstrap_p_value(&x, stat, 2000, 5)?;
        println!(
            "{:>5}  value {:>9.5}  scaled {:>8.4}  p = {:.4}",
            stat.name(),
            r.value,
            r.scaled_value,
            r.p_value.unwrap()
        );
    }
    Ok(())
}
