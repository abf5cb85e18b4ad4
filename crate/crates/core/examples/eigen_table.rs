//! Leading eigenvalue of the J operator for every supported null, at a few
//! resolutions.

use symtest::distributions::NullDistribution;
use symtest::spectral::{build_discrete_operator, largest_abs_eigenvalue, KernelTag};

fn main() -> symtest::Result<()> {
    let sizes = [250, 500, 1000];
    print!("{:<10} {:>6}", "null", "A");
    for m in sizes {
        print!(" {:>10}", format!("m={m}"));
    }
    println!();
    for d in [NullDistribution::Uniform, NullDistribution::Normal, NullDistribution::Logistic, NullDistribution::Laplace] {
        print!("{:<10} {:>6}", d.name(), d.truncation_a());
        for m in sizes {
            let op = build_discrete_operator(d, KernelTag::J, m, None)?;
            print!(" {:>10.6}", largest_abs_eigenvalue(&op)?);
        }
        println!();
    }
    // heavy tails have no finite truncation
    if let Err(e) = build_discrete_operator(NullDistribution::Cauchy, KernelTag::J, 100, None) {
        println!("cauchy: {e}");
    }
    Ok(())
}
