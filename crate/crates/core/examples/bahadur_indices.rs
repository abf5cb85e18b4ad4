//! Local approximate Bahadur indices of J_n and K_n for every standard
//! alternative, as CSV on stdout.
//!
//! ```text
//! cargo run --release --example bahadur_indices -- uniform laplace
//! ```

use symtest::distributions::NullDistribution;
use symtest::efficiency::{index_table, write_index_csv};

fn main() -> symtest::Result<()> {
    let mut nulls: Vec<NullDistribution> = std::env::args()
        .skip(1)
        .map(|s| s.parse())
        .collect::<symtest::Result<_>>()?;
    if nulls.is_empty() {
        nulls = vec![NullDistribution::Uniform, NullDistribution::Normal];
    }
    let rows = index_table(&nulls, None);
    write_index_csv(&rows, std::io::stdout().lock(), 4)?;

    eprintln!();
    for r in &rows {
        if let Some(e) = r.relative_efficiency() {
            eprintln!("{}/{}: J vs K {e:.3}", r.null, r.alternative.label());
        }
        for msg in &r.errors {
            eprintln!("{}/{}: {msg}", r.null, r.alternative.label());
        }
    }
    Ok(())
}
