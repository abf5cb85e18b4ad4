use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;

use super::operator::DiscreteOperator;
use crate::error::{Error, Result};
use crate::rng::StreamFactory;

/// Power-iteration settings.
#[derive(Debug, Clone, Copy)]
pub struct PowerOptions {
    /// Relative change of the Rayleigh quotient that counts as converged.
    pub rel_tol: f64,
    pub max_iter: usize,
    /// Seed of the random start vector.
    pub seed: u64,
}

impl Default for PowerOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            max_iter: 100_000,
            seed: 0x5eed,
        }
    }
}

/// Dominant eigenpair estimate.
#[derive(Debug, Clone)]
pub struct EigenEstimate {
    pub value: f64,
    pub iterations: usize,
    /// `‖Mv - λv‖ / ‖Mv‖` at exit.
    pub residual: f64,
    /// True when the shifted fallback produced the value.
    pub shifted: bool,
}

// the eigenvector residual decays like the square root of the
// Rayleigh-quotient error, hence the looser bound here
const RESIDUAL_TOL: f64 = 1e-4;

fn random_unit(n: usize, seed: u64) -> DVector<f64> {
    let mut rng = StreamFactory::new(seed).stream(0);
    let v = DVector::from_fn(n, |_, _| rng.random::<f64>() - 0.5);
    let norm = v.norm();
    v / norm
}

/// Iterates `v ← Mv/‖Mv‖` with an optional diagonal shift. Returns the
/// Rayleigh quotient of `M + shift·I`, iterations used, residual, and whether
/// both convergence tests passed.
fn iterate(matrix: &DMatrix<f64>, shift: f64, opts: &PowerOptions, check_residual: bool) -> (f64, usize, f64, bool) {
    let n = matrix.nrows();
    let mut v = random_unit(n, opts.seed);
    let mut w = DVector::zeros(n);
    let mut prev = f64::NAN;
    let mut residual = f64::INFINITY;
    for it in 1..=opts.max_iter {
        w.gemv(1.0, matrix, &v, 0.0);
        if shift != 0.0 {
            w.axpy(shift, &v, 1.0);
        }
        let lambda = v.dot(&w);
        let norm = w.norm();
        if norm == 0.0 {
            return (0.0, it, 0.0, true);
        }
        residual = (&w - lambda * &v).norm() / norm;
        v.copy_from(&w);
        v /= norm;
        let settled = (lambda - prev).abs() <= opts.rel_tol * lambda.abs();
        if settled && (!check_residual || residual <= RESIDUAL_TOL) {
            return (lambda, it, residual, true);
        }
        prev = lambda;
    }
    (prev, opts.max_iter, residual, false)
}

/// Eigenvalue of largest absolute value of a symmetric matrix.
///
/// Plain power iteration with a seeded random start; the sign comes from the
/// Rayleigh quotient. When a near-degenerate `±λ` pair stalls the iteration,
/// it falls back to two shifted iterations that find the extreme eigenvalues
/// of `M + σI` and `σI - M` separately.
pub fn dominant_eigenvalue(matrix: &DMatrix<f64>, opts: &PowerOptions) -> Result<EigenEstimate> {
    if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
        return Err(Error::InvalidParameter("matrix must be square and non-empty".into()));
    }
    let (value, iterations, residual, ok) = iterate(matrix, 0.0, opts, true);
    if ok {
        return Ok(EigenEstimate {
            value,
            iterations,
            residual,
            shifted: false,
        });
    }
    // σ = max absolute row sum bounds the spectral radius
    let sigma = matrix
        .row_iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let (top, it_top, res_top, ok_top) = iterate(matrix, sigma, opts, false);
    let neg = -matrix;
    let (bottom, it_bot, res_bot, ok_bot) = iterate(&neg, sigma, opts, false);
    if !(ok_top && ok_bot) {
        return Err(Error::NoConvergence(format!(
            "power iteration stalled after {} iterations (residual {residual:e})",
            opts.max_iter
        )));
    }
    let largest = top - sigma;
    let smallest = sigma - bottom;
    let (value, residual) = if largest.abs() >= smallest.abs() {
        (largest, res_top)
    } else {
        (smallest, res_bot)
    };
    Ok(EigenEstimate {
        value,
        iterations: iterations + it_top + it_bot,
        residual,
        shifted: true,
    })
}

/// Largest-magnitude eigenvalue of a discretized operator.
pub fn largest_abs_eigenvalue(op: &DiscreteOperator) -> Result<f64> {
    dominant_eigenvalue(&op.matrix, &PowerOptions::default()).map(|e| e.value)
}

/// Full spectrum of a symmetric matrix, sorted by decreasing absolute value.
pub fn symmetric_spectrum(matrix: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(matrix.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    ev
}

/// The `k` eigenvalues of largest absolute value of a symmetric matrix, by
/// subspace iteration with Rayleigh-Ritz extraction. Cheaper than a full
/// eigensolve when `k` is much smaller than the dimension.
pub fn top_eigenvalues(matrix: &DMatrix<f64>, k: usize, seed: u64) -> Result<Vec<f64>> {
    let n = matrix.nrows();
    if k == 0 || k > n {
        return Err(Error::SpectrumExhausted { requested: k, available: n });
    }
    let p = (k + 8).min(n);
    let mut rng = StreamFactory::new(seed).stream(1);
    let mut q = DMatrix::from_fn(n, p, |_, _| rng.random::<f64>() - 0.5).qr().q();
    let mut prev = vec![f64::NAN; k];
    for _ in 0..5000 {
        let z = matrix * &q;
        let small = q.transpose() * &z;
        let mut ritz: Vec<f64> = SymmetricEigen::new(small).eigenvalues.iter().copied().collect();
        ritz.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
        ritz.truncate(k);
        let scale = ritz[0].abs().max(f64::MIN_POSITIVE);
        let done = ritz.iter().zip(&prev).all(|(a, b)| (a - b).abs() <= 1e-12 * scale);
        if done {
            return Ok(ritz);
        }
        prev = ritz;
        q = z.qr().q();
    }
    Err(Error::NoConvergence(format!("subspace iteration for top {k} eigenvalues")))
}
