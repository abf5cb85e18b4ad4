//! Local approximate Bahadur indices of `J_n` and `K_n`.
//!
//! For a family `G(·; θ)` with score `h`, the in-probability limits behave
//! like `b θ²` as `θ → 0`. Combined with the tail constant of the null limit
//! (`1/(3ν₁)` for `J_n`, `1/κ₀` for `K_n`) this gives the index, the `θ²`
//! coefficient of the approximate slope.

mod integrals;

use std::io::Write;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

pub use integrals::{b_j_coefficient, b_j_with_panels, b_k_profile, b_k_profile_with_panels, ScoreIntegral};

use crate::distributions::{Alternative, AlternativeFamily, NullDistribution};
use crate::error::{Error, Result};
use crate::spectral::{golden_max, kappa0_uniform_closed_form, leading_j_eigenvalue, nu1_curve, CurveOptions};
use crate::statistics::Statistic;

/// Threshold grid size for maximizing the `K_n` profile.
pub const PROFILE_GRID: usize = 512;
pub const PROFILE_T_TOL: f64 = 1e-4;

/// Spectral constants a slope needs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailConstants {
    /// Leading eigenvalue of the `J` operator.
    pub nu1: f64,
    /// `sup_t ν₁(t)` of the `K` operators.
    pub kappa0: f64,
}

impl TailConstants {
    pub fn new(nu1: f64, kappa0: f64) -> Result<Self> {
        if !(nu1 > 0.0 && kappa0 > 0.0 && nu1.is_finite() && kappa0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tail constants must be positive, got nu1={nu1}, kappa0={kappa0}"
            )));
        }
        Ok(Self { nu1, kappa0 })
    }

    /// Closed forms for the uniform null, default-resolution Nyström values
    /// otherwise. Cached per null.
    pub fn for_null(dist: NullDistribution) -> Result<Self> {
        static CACHE: [OnceLock<f64>; 5] = [const { OnceLock::new() }; 5];
        let nu1 = leading_j_eigenvalue(dist)?;
        let kappa0 = if dist == NullDistribution::Uniform {
            kappa0_uniform_closed_form()
        } else {
            let slot = &CACHE[NullDistribution::ALL.iter().position(|d| *d == dist).unwrap()];
            match slot.get() {
                Some(v) => *v,
                None => {
                    let v = nu1_curve(dist, &CurveOptions::default())?.sup_value.abs();
                    *slot.get_or_init(|| v)
                }
            }
        };
        Self::new(nu1, kappa0)
    }
}

/// One local index.
#[derive(Debug, Clone, Serialize)]
pub struct SlopeResult {
    pub statistic: Statistic,
    pub null_dist: NullDistribution,
    pub alternative: Alternative,
    /// `θ²` coefficient of the approximate slope.
    pub index: f64,
    /// `θ²` coefficient of the limit in probability (signed for `J_n`,
    /// the absolute supremum for `K_n`).
    pub b_coefficient: f64,
    pub tail_constant: f64,
    pub argmax_t: Option<f64>,
}

/// Index of `J_n` with explicitly supplied spectral constants.
pub fn slope_jn_with(fam: &AlternativeFamily, tails: &TailConstants) -> Result<SlopeResult> {
    let b = b_j_coefficient(fam)?;
    let tail = 1.0 / (3.0 * tails.nu1);
    Ok(SlopeResult {
        statistic: Statistic::Jn,
        null_dist: fam.base,
        alternative: fam.alternative,
        index: tail * b.abs(),
        b_coefficient: b,
        tail_constant: tail,
        argmax_t: None,
    })
}

pub fn slope_jn(fam: &AlternativeFamily) -> Result<SlopeResult> {
    slope_jn_with(fam, &TailConstants::for_null(fam.base)?)
}

/// `sup_t |b_K(t)|` and its location: a 512-point grid on `(0, 2A]`
/// followed by golden section between the neighbours of the grid maximum.
pub fn b_k_supremum(fam: &AlternativeFamily) -> Result<(f64, f64)> {
    let h = ScoreIntegral::new(fam)?;
    let a = fam.base.spectral_bound()?;
    let step = 2.0 * a / PROFILE_GRID as f64;
    let values: Vec<f64> = (1..=PROFILE_GRID)
        .into_par_iter()
        .map(|k| integrals::profile_with(&h, step * k as f64))
        .collect();
    let best = (0..values.len())
        .max_by(|&i, &j| values[i].abs().total_cmp(&values[j].abs()))
        .unwrap();
    let lo = step * best as f64;
    let hi = step * (best + 2).min(PROFILE_GRID) as f64;
    let (t, v) = golden_max(|t| Ok(integrals::profile_with(&h, t)), lo.max(step * 0.5), hi, PROFILE_T_TOL)?;
    let (t, v) = if v.abs() >= values[best].abs() {
        (t, v)
    } else {
        (step * (best + 1) as f64, values[best])
    };
    Ok((t, v.abs()))
}

pub fn slope_kn_with(fam: &AlternativeFamily, tails: &TailConstants) -> Result<SlopeResult> {
    let (t, sup) = b_k_supremum(fam)?;
    let tail = 1.0 / tails.kappa0;
    Ok(SlopeResult {
        statistic: Statistic::Kn,
        null_dist: fam.base,
        alternative: fam.alternative,
        index: tail * sup,
        b_coefficient: sup,
        tail_constant: tail,
        argmax_t: Some(t),
    })
}

pub fn slope_kn(fam: &AlternativeFamily) -> Result<SlopeResult> {
    slope_kn_with(fam, &TailConstants::for_null(fam.base)?)
}

/// The alternatives tabulated for a null: g1–g4(3) for the uniform law,
/// all seven (with g4(3) and g6(1)) otherwise.
pub fn standard_alternatives(dist: NullDistribution) -> Vec<Alternative> {
    let mut alts = vec![
        Alternative::G1,
        Alternative::G2,
        Alternative::G3,
        Alternative::G4 {
            beta: Alternative::G4_DEFAULT_BETA,
        },
    ];
    if dist != NullDistribution::Uniform {
        alts.extend([
            Alternative::G5,
            Alternative::G6 {
                beta: Alternative::G6_DEFAULT_BETA,
            },
            Alternative::G7,
        ]);
    }
    alts
}

/// One row of the index table. A failed cell leaves its index empty and
/// records the error message.
#[derive(Debug, Clone, Serialize)]
pub struct IndexRow {
    pub null: NullDistribution,
    pub alternative: Alternative,
    pub jn: Option<SlopeResult>,
    pub kn: Option<SlopeResult>,
    pub errors: Vec<String>,
}

impl IndexRow {
    /// Relative efficiency of `J_n` with respect to `K_n`.
    pub fn relative_efficiency(&self) -> Option<f64> {
        Some(self.jn.as_ref()?.index / self.kn.as_ref()?.index)
    }
}

/// Indices for every (null, alternative) pair; `alternatives = None` uses
/// [`standard_alternatives`] for each null.
pub fn index_table(dists: &[NullDistribution], alternatives: Option<&[Alternative]>) -> Vec<IndexRow> {
    let mut rows = Vec::new();
    for &dist in dists {
        let tails = TailConstants::for_null(dist);
        let alts = match alternatives {
            Some(a) => a.to_vec(),
            None => standard_alternatives(dist),
        };
        for alt in alts {
            let mut row = IndexRow {
                null: dist,
                alternative: alt,
                jn: None,
                kn: None,
                errors: Vec::new(),
            };
            match (&tails, AlternativeFamily::new(alt, dist)) {
                (Ok(t), Ok(fam)) => {
                    match slope_jn_with(&fam, t) {
                        Ok(s) => row.jn = Some(s),
                        Err(e) => row.errors.push(format!("Jn: {e}")),
                    }
                    match slope_kn_with(&fam, t) {
                        Ok(s) => row.kn = Some(s),
                        Err(e) => row.errors.push(format!("Kn: {e}")),
                    }
                }
                (Err(e), _) => row.errors.push(e.to_string()),
                (_, Err(e)) => row.errors.push(e.to_string()),
            }
            rows.push(row);
        }
    }
    rows
}

/// CSV with one line per row: `null,alternative,c_Jn,c_Kn`.
pub fn write_index_csv<W: Write>(rows: &[IndexRow], out: W, digits: usize) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["null", "alternative", "c_Jn", "c_Kn"])?;
    let cell = |s: &Option<SlopeResult>| s.as_ref().map(|s| format!("{:.digits$}", s.index)).unwrap_or_default();
    for r in rows {
        w.write_record([r.null.name().to_string(), r.alternative.label(), cell(&r.jn), cell(&r.kn)])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}
