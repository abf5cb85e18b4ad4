//! Closed-form eigenvalues of the J operator for the uniform null against
//! the Nyström discretization.

use symtest::distributions::NullDistribution;
use symtest::spectral::{build_discrete_operator, solve_uniform_eigenvalues, symmetric_spectrum, uniform_eigen_equation, KernelTag};

fn main() -> symtest::Result<()> {
    let roots = solve_uniform_eigenvalues(6)?;
    let op = build_discrete_operator(NullDistribution::Uniform, KernelTag::J, 400, None)?;
    let mut spectrum = symmetric_spectrum(&op.matrix);
    spectrum.sort_by(|a, b| b.abs().total_cmp(&a.abs()));

    println!("{:>3} {:>12} {:>12} {:>10}", "k", "root", "m=400", "residual");
    for (k, r) in roots.iter().enumerate() {
        println!("{:>3} {r:>12.8} {:>12.8} {:>10.1e}", k + 1, spectrum[k], uniform_eigen_equation(*r)?);
    }
    Ok(())
}
