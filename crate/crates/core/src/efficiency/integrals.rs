use rayon::prelude::*;

use crate::distributions::{Alternative, AlternativeFamily, NullDistribution};
use crate::error::{Error, Result};
use crate::quadrature::{composite_nodes, gl16, panel_edges};
use crate::spectral::KernelPhi;

const START_PANELS: usize = 16;
const MAX_PANELS: usize = 1024;
const REL_TOL: f64 = 1e-5;
const PROFILE_PANELS: usize = 96;
const TABLE_PANELS: usize = 512;

/// Integration range for the score: the support for the uniform null, the
/// truncation interval otherwise.
fn score_range(fam: &AlternativeFamily) -> Result<(f64, f64)> {
    if fam.base == NullDistribution::Uniform && fam.alternative == Alternative::G5 {
        return Err(Error::InvalidParameter(
            "the location score of the uniform law is not a function; uniform/g5 has no local index".into(),
        ));
    }
    let a = fam.base.spectral_bound()?;
    Ok((-a, a))
}

/// Score knots plus a geometric grading towards each of them, which keeps
/// the logarithmic endpoint singularity of the g1 score under control.
fn graded_knots(fam: &AlternativeFamily) -> Vec<f64> {
    let mut out = Vec::new();
    for k in fam.knots() {
        out.push(k);
        for j in 1..=30 {
            let d = 0.5f64.powi(j);
            out.push(k - d);
            out.push(k + d);
        }
    }
    out
}

fn phi_breakpoints(x: f64, base_knots: &[f64], score_knots: &[f64]) -> Vec<f64> {
    let mut bp = score_knots.to_vec();
    bp.extend([x, -x]);
    for &k in base_knots {
        let k = k.abs();
        bp.extend([k - x, -k - x, x + k, x - k]);
    }
    bp
}

/// `b_J` with a fixed number of panels per dimension.
pub fn b_j_with_panels(fam: &AlternativeFamily, panels: usize) -> Result<f64> {
    let (lo, hi) = score_range(fam)?;
    let kernel = KernelPhi::new(fam.base);
    let score_knots = graded_knots(fam);
    let base_knots = fam.base.knots();
    let mut outer_bp = score_knots.clone();
    outer_bp.push(0.0);
    outer_bp.extend(base_knots.iter().map(|k| 0.5 * k));
    let outer = composite_nodes(gl16(), lo, hi, &outer_bp, panels);
    let total: f64 = outer
        .par_iter()
        .map(|&(x, wx)| {
            let hx = fam.score(x);
            if hx == 0.0 {
                return 0.0;
            }
            let bp = phi_breakpoints(x, base_knots, &score_knots);
            let inner: f64 = composite_nodes(gl16(), lo, hi, &bp, panels)
                .into_iter()
                .map(|(y, wy)| wy * kernel.evaluate(x, y) * fam.score(y))
                .sum();
            wx * hx * inner
        })
        .sum();
    Ok(3.0 * total)
}

/// `3 ∬ φ_F(x, y) h(x) h(y) dx dy`, the `θ²` coefficient of the
/// in-probability limit of `J_n` under the family.
///
/// Nested composite Gauss–Legendre with the inner panels split at every kink
/// of `φ_F(x, ·)`; the panel count doubles until two successive estimates
/// agree to a relative `1e-5`.
pub fn b_j_coefficient(fam: &AlternativeFamily) -> Result<f64> {
    let mut prev = b_j_with_panels(fam, START_PANELS)?;
    let mut panels = START_PANELS;
    while panels < MAX_PANELS {
        panels *= 2;
        let next = b_j_with_panels(fam, panels)?;
        if (next - prev).abs() <= REL_TOL * next.abs().max(1e-12) {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence(format!(
        "b_J quadrature for {} did not settle at {MAX_PANELS} panels",
        fam.label()
    )))
}

/// Antiderivative `H(x) = ∫_{lo}^x h` of a score, tabulated on panel edges
/// and completed inside a panel by a partial Gauss–Legendre integral.
pub struct ScoreIntegral<'a> {
    fam: &'a AlternativeFamily,
    edges: Vec<f64>,
    cumulative: Vec<f64>,
}

impl<'a> ScoreIntegral<'a> {
    pub fn new(fam: &'a AlternativeFamily) -> Result<Self> {
        Self::with_panels(fam, TABLE_PANELS)
    }

    pub fn with_panels(fam: &'a AlternativeFamily, panels: usize) -> Result<Self> {
        let (lo, hi) = score_range(fam)?;
        let edges = panel_edges(lo, hi, &graded_knots(fam), panels);
        let mut cumulative = Vec::with_capacity(edges.len());
        let mut acc = 0.0;
        cumulative.push(0.0);
        for w in edges.windows(2) {
            acc += gl16().integrate(w[0], w[1], |u| fam.score(u));
            cumulative.push(acc);
        }
        Ok(Self { fam, edges, cumulative })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let lo = self.edges[0];
        let hi = *self.edges.last().unwrap();
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return *self.cumulative.last().unwrap();
        }
        let k = self.edges.partition_point(|&e| e <= x) - 1;
        self.cumulative[k] + gl16().integrate(self.edges[k], x, |u| self.fam.score(u))
    }

    fn range(&self) -> (f64, f64) {
        (self.edges[0], *self.edges.last().unwrap())
    }
}

/// `∬ ξ(s₁, s₂; t) h(s₁) h(s₂) ds₁ ds₂` through the one-dimensional form
/// `∫ h(s) [H(s+t) - H(s-t) - H(t-s) + H(-t-s)] ds`.
pub fn b_k_profile(fam: &AlternativeFamily, t: f64) -> Result<f64> {
    let h = ScoreIntegral::new(fam)?;
    Ok(profile_with(&h, t))
}

/// [`b_k_profile`] with `panels` outer panels and a cumulative table of
/// `table_panels` panels.
pub fn b_k_profile_with_panels(fam: &AlternativeFamily, t: f64, panels: usize, table_panels: usize) -> Result<f64> {
    let h = ScoreIntegral::with_panels(fam, table_panels)?;
    Ok(profile_panels(&h, t, panels))
}

pub(crate) fn profile_with(h: &ScoreIntegral<'_>, t: f64) -> f64 {
    profile_panels(h, t, PROFILE_PANELS)
}

fn profile_panels(h: &ScoreIntegral<'_>, t: f64, panels: usize) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let fam = h.fam;
    let (lo, hi) = h.range();
    let mut bp = graded_knots(fam);
    for k in fam.knots() {
        bp.extend([k - t, k + t, t - k, -t - k]);
    }
    composite_nodes(gl16(), lo, hi, &bp, panels)
        .into_iter()
        .map(|(s, w)| {
            let jump = h.eval(s + t) - h.eval(s - t) - h.eval(t - s) + h.eval(-t - s);
            w * fam.score(s) * jump
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(alt: &str, base: NullDistribution) -> AlternativeFamily {
        AlternativeFamily::new(Alternative::parse(alt, None).unwrap(), base).unwrap()
    }

    #[test]
    fn score_integral_ends_near_zero() {
        let f = fam("g2", NullDistribution::Normal);
        let h = ScoreIntegral::new(&f).unwrap();
        assert!(h.eval(100.0).abs() < 1e-12);
        assert_eq!(h.eval(-100.0), 0.0);
        // g2 score on the normal: H(x) = φ(x)(2Φ(x)-1) - ... compare with direct quadrature
        let direct = crate::quadrature::composite(gl16(), -10.0, 0.3, &[], 200, |u| f.score(u));
        assert!((h.eval(0.3) - direct).abs() < 1e-12);
    }

    #[test]
    fn profile_vanishes_at_zero_threshold() {
        let f = fam("g1", NullDistribution::Logistic);
        assert_eq!(b_k_profile(&f, 0.0).unwrap(), 0.0);
        assert!(b_k_profile(&f, 1e-7).unwrap().abs() < 1e-6);
    }

    #[test]
    fn uniform_shift_rejected() {
        assert!(b_j_coefficient(&fam("g5", NullDistribution::Uniform)).is_err());
    }
}
