use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use super::eigen::largest_abs_eigenvalue;
use super::operator::{build_discrete_operator, KernelTag};
use crate::distributions::NullDistribution;
use crate::error::{Error, Result};

/// Resolution settings for [`nu1_curve`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveOptions {
    pub m_coarse: usize,
    pub m_fine: usize,
    pub grid_size: usize,
    /// Golden-section stopping width in `t`.
    pub t_tol: f64,
}

impl Default for CurveOptions {
    fn default() -> Self {
        Self {
            m_coarse: 200,
            m_fine: 1000,
            grid_size: 256,
            t_tol: 1e-4,
        }
    }
}

/// The leading eigenvalue `ν₁(t)` of the `K`-operator as a function of the
/// threshold, with its refined maximum.
#[derive(Debug, Clone, Serialize)]
pub struct EigenCurve {
    pub dist: NullDistribution,
    pub t_grid: Vec<f64>,
    pub nu1_values: Vec<f64>,
    pub argmax_t: f64,
    pub sup_value: f64,
    pub options: CurveOptions,
}

impl EigenCurve {
    /// Writes `t,nu1` rows (with header) to any writer.
    pub fn write_csv<W: Write>(&self, out: W, digits: usize) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "nu1"])?;
        for (t, v) in self.t_grid.iter().zip(&self.nu1_values) {
            w.write_record([format!("{t:.digits$}"), format!("{v:.digits$}")])?;
        }
        w.flush().map_err(|e| Error::io("<csv>", e))?;
        Ok(())
    }

    pub fn save_csv(&self, path: &Path, digits: usize) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_csv(file, digits)
    }
}

/// `ν₁(t)` at a single threshold and resolution.
pub fn nu1_at(dist: NullDistribution, t: f64, m: usize) -> Result<f64> {
    let op = build_discrete_operator(dist, KernelTag::K(t), m, None)?;
    largest_abs_eigenvalue(&op)
}

/// Sweeps `ν₁(t)` over `t_k = 2A k / grid_size`, `k = 1..=grid_size`, at the
/// coarse resolution, then maximizes `|ν₁|` by golden section at the fine
/// resolution on the two grid cells around the coarse maximum.
pub fn nu1_curve(dist: NullDistribution, opts: &CurveOptions) -> Result<EigenCurve> {
    let a = dist.spectral_bound()?;
    if opts.grid_size < 3 {
        return Err(Error::OutOfRange {
            name: "grid_size",
            value: opts.grid_size as f64,
            range: "[3, inf)".into(),
        });
    }
    if !(opts.t_tol > 0.0) {
        return Err(Error::InvalidParameter("t_tol must be positive".into()));
    }
    let step = 2.0 * a / opts.grid_size as f64;
    let t_grid: Vec<f64> = (1..=opts.grid_size).map(|k| step * k as f64).collect();
    let nu1_values = t_grid
        .par_iter()
        .map(|&t| nu1_at(dist, t, opts.m_coarse))
        .collect::<Result<Vec<f64>>>()?;
    let best = (0..nu1_values.len())
        .max_by(|&i, &j| nu1_values[i].abs().total_cmp(&nu1_values[j].abs()))
        .expect("non-empty grid");
    let lo = if best == 0 { step * 0.5 } else { t_grid[best - 1] };
    let hi = t_grid[(best + 1).min(t_grid.len() - 1)];
    let (argmax_t, sup_value) = golden_max(|t| nu1_at(dist, t, opts.m_fine), lo, hi, opts.t_tol)?;
    Ok(EigenCurve {
        dist,
        t_grid,
        nu1_values,
        argmax_t,
        sup_value,
        options: *opts,
    })
}

/// Golden-section search for the maximum of `|f|` on `[lo, hi]`, returning
/// the best point evaluated (and its signed value). The curve is piecewise
/// smooth at finite `m`, so tracking the best evaluation guards against a
/// non-unimodal bracket.
pub fn golden_max<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let mut best = if f1.abs() >= f2.abs() { (x1, f1) } else { (x2, f2) };
    while hi - lo > tol {
        if f1.abs() >= f2.abs() {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1)?;
            if f1.abs() > best.1.abs() {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2)?;
            if f2.abs() > best.1.abs() {
                best = (x2, f2);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x| Ok(1.0 - (x - 0.3).powi(2)), 0.0, 1.0, 1e-8).unwrap();
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_tracks_negative_extremum() {
        let (x, v) = golden_max(|x| Ok(-2.0 + (x - 1.5).powi(2)), 1.0, 2.0, 1e-8).unwrap();
        assert!((x - 1.5).abs() < 1e-6 && (v + 2.0).abs() < 1e-12);
    }

    #[test]
    fn coarse_uniform_curve() {
        let opts = CurveOptions {
            m_coarse: 60,
            m_fine: 120,
            grid_size: 40,
            t_tol: 1e-3,
        };
        let c = nu1_curve(NullDistribution::Uniform, &opts).unwrap();
        assert_eq!(c.t_grid.len(), 40);
        assert!(c.nu1_values.iter().all(|v| v.is_finite()));
        assert!((c.argmax_t - 2.0 / 3.0).abs() < 0.06, "{}", c.argmax_t);
        assert!((c.sup_value - 0.766).abs() < 0.03, "{}", c.sup_value);
        let mut buf = Vec::new();
        c.write_csv(&mut buf, 6).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t,nu1\n"));
        assert_eq!(text.lines().count(), 41);
    }

    #[test]
    fn cauchy_rejected() {
        assert!(nu1_curve(NullDistribution::Cauchy, &CurveOptions::default()).is_err());
    }
}
