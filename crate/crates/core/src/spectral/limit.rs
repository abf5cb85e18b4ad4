use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::eigen::top_eigenvalues;
use super::operator::{build_discrete_operator, KernelTag};
use super::uniform::solve_uniform_eigenvalues;
use crate::distributions::NullDistribution;
use crate::error::{Error, Result};
use crate::rng::StreamFactory;

/// Operator resolution used to extract a top-`k` spectrum for non-uniform nulls.
pub const LIMIT_LAW_M: usize = 500;

const CHUNK: usize = 4096;

/// The `k` leading eigenvalues of the `J` operator: closed-form roots for
/// the uniform null, Nyström eigenvalues at `m = 500` otherwise.
pub fn limit_eigenvalues(dist: NullDistribution, k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k_eigen must be at least 1".into()));
    }
    match dist {
        NullDistribution::Uniform => solve_uniform_eigenvalues(k),
        _ => {
            let op = build_discrete_operator(dist, KernelTag::J, LIMIT_LAW_M, None)?;
            let dim = op.dim();
            if k > dim {
                return Err(Error::SpectrumExhausted { requested: k, available: dim });
            }
            top_eigenvalues(&op.matrix, k, 0x11a1)
        }
    }
}

/// Draws from `3 Σ ν_i (W_i² − 1)` with i.i.d. standard normal `W_i`.
///
/// Draws are produced in fixed chunks, each from its own stream, so the
/// output depends only on `seed`.
pub fn sample_weighted_chi2(eigenvalues: &[f64], n_draws: usize, seed: u64) -> Vec<f64> {
    let factory = StreamFactory::new(seed);
    let chunks = n_draws.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = factory.stream(c as u64);
            let len = CHUNK.min(n_draws - c * CHUNK);
            (0..len)
                .map(|_| {
                    3.0 * eigenvalues
                        .iter()
                        .map(|nu| {
                            let w: f64 = StandardNormal.sample(&mut rng);
                            nu * (w * w - 1.0)
                        })
                        .sum::<f64>()
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Realizations of the truncated limit law of `n J_n` under `dist`.
pub fn sample_limit_null_jn(dist: NullDistribution, k_eigen: usize, n_draws: usize, seed: u64) -> Result<Vec<f64>> {
    let ev = limit_eigenvalues(dist, k_eigen)?;
    Ok(sample_weighted_chi2(&ev, n_draws, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sized() {
        let ev = [0.2, 0.05];
        let a = sample_weighted_chi2(&ev, 10_000, 7);
        let b = sample_weighted_chi2(&ev, 10_000, 7);
        assert_eq!(a.len(), 10_000);
        assert_eq!(a, b);
        assert_ne!(a, sample_weighted_chi2(&ev, 10_000, 8));
    }

    #[test]
    fn lower_bound() {
        // each term is at least -ν_i
        let ev = [0.2, 0.05];
        let floor = -3.0 * 0.25;
        assert!(sample_weighted_chi2(&ev, 5000, 1).iter().all(|&v| v >= floor));
    }

    #[test]
    fn too_many_eigenvalues() {
        assert!(matches!(
            limit_eigenvalues(NullDistribution::Normal, 5000),
            Err(Error::SpectrumExhausted { .. })
        ));
        assert!(limit_eigenvalues(NullDistribution::Cauchy, 3).is_err());
    }
}
