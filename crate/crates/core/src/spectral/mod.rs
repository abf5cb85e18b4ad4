//! Spectra of the integral operators behind the limit laws of `n J_n` and
//! `n K_n`: closed forms for the uniform null, Nyström matrices for the
//! others, the threshold curve `ν₁(t)` and a sampler for the `J_n` limit.

mod curve;
mod eigen;
mod kernels;
mod limit;
mod operator;
mod uniform;

use std::sync::OnceLock;

pub use curve::{golden_max, nu1_at, nu1_curve, CurveOptions, EigenCurve};
pub use eigen::{dominant_eigenvalue, largest_abs_eigenvalue, symmetric_spectrum, top_eigenvalues, EigenEstimate, PowerOptions};
pub use kernels::{KernelPhi, KernelXi};
pub use limit::{limit_eigenvalues, sample_limit_null_jn, sample_weighted_chi2, LIMIT_LAW_M};
pub use operator::{build_discrete_operator, DiscreteOperator, KernelTag};
pub use uniform::{
    fundamental_equation_residual, kappa0_uniform_closed_form, psi1, psi1_series, psi2, psi2_series,
    reduced_equation_residual, solve_uniform_eigenvalues, trace_fundamental_root, triangular_spectrum,
    uniform_eigen_equation, uniform_eigen_series,
};

use crate::distributions::NullDistribution;
use crate::error::Result;

/// Resolution of the headline Nyström eigenvalues.
pub const HEADLINE_M: usize = 1000;

/// Leading eigenvalue `ν₁` of the `J` operator: the closed-form root for the
/// uniform null, the `m = 1000` Nyström value otherwise. Cached per null.
pub fn leading_j_eigenvalue(dist: NullDistribution) -> Result<f64> {
    static CACHE: [OnceLock<f64>; 4] = [const { OnceLock::new() }; 4];
    let slot = match dist {
        NullDistribution::Uniform => return Ok(solve_uniform_eigenvalues(1)?[0]),
        NullDistribution::Normal => &CACHE[1],
        NullDistribution::Logistic => &CACHE[2],
        NullDistribution::Laplace => &CACHE[3],
        NullDistribution::Cauchy => {
            dist.spectral_bound()?;
            unreachable!()
        }
    };
    if let Some(v) = slot.get() {
        return Ok(*v);
    }
    let op = build_discrete_operator(dist, KernelTag::J, HEADLINE_M, None)?;
    let v = largest_abs_eigenvalue(&op)?;
    Ok(*slot.get_or_init(|| v))
}
