//! Leading eigenvalue of the K operator family as a function of the
//! threshold, written as CSV for plotting.
//!
//! ```text
//! cargo run --release --example threshold_curve -- normal nu1_normal.csv
//! ```

use symtest::distributions::NullDistribution;
use symtest::spectral::{nu1_curve, CurveOptions};

fn main() -> symtest::Result<()> {
    let mut args = std::env::args().skip(1);
    let dist: NullDistribution = args.next().as_deref().unwrap_or("uniform").parse()?;
    let out = args.next();

    let curve = nu1_curve(dist, &CurveOptions::default())?;
    println!("{dist}: sup {:.5} at t = {:.4}", curve.sup_value.abs(), curve.argmax_t);
    match out {
        Some(path) => {
            curve.save_csv(path.as_ref(), 8)?;
            println!("wrote {} points to {path}", curve.t_grid.len());
        }
        None => {
            let step = curve.t_grid.len() / 16;
            for (t, v) in curve.t_grid.iter().zip(&curve.nu1_values).step_by(step.max(1)) {
                println!("{t:>8.4} {v:>9.5}");
            }
        }
    }
    Ok(())
}
