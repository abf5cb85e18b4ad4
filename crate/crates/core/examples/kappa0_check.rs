//! The t = 2/3 reduction for the uniform null: the closed-form supremum,
//! the eigen-equations it solves, and the series behind the closed forms.

use symtest::spectral::*;

fn main() -> symtest::Result<()> {
    let k0 = kappa0_uniform_closed_form();
    println!("kappa0 = {k0:.10}");
    println!("reduced residual      {:.2e}", reduced_equation_residual(k0)?);
    println!("fundamental residual  {:.2e}", fundamental_equation_residual(2.0 / 3.0, k0)?);

    println!("\nsupremum sits at the left end of the traced branch:");
    for t in [2.0 / 3.0, 0.68, 0.7, 0.75] {
        let root = trace_fundamental_root(t, 0.6, 0.9)?;
        println!("  t = {t:.4}  root {root:.6}  m=600 {:.6}", nu1_at(symtest::distributions::NullDistribution::Uniform, t, 600)?);
    }

    println!("\n{:>6} {:>12} {:>12} {:>12} {:>12}", "c", "psi1", "series", "psi2", "series");
    for c in [0.1, 0.5, 1.0, 1.5] {
        println!(
            "{c:>6} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            psi1(c)?,
            psi1_series(c, 200_000),
            psi2(c)?,
            psi2_series(c, 200_000)
        );
    }
    Ok(())
}
