use nalgebra::DMatrix;
use serde::Serialize;

use crate::distributions::NullDistribution;
use crate::error::{Error, Result};

/// Which integral operator a matrix discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum KernelTag {
    /// The `J_n` operator with kernel `φ_F`.
    J,
    /// The `K_n` operator at threshold `t`, kernel `ξ(·, ·; t)`.
    K(f64),
}

/// Nyström matrix of an integral operator on the grid `x_i = A i / m`,
/// `|i| <= m`:
///
/// `m_ij = κ(x_i, x_j) · √(F(x_{i+1}) - F(x_i)) · √(F(x_{j+1}) - F(x_j))`.
///
/// Kernel values use left endpoints and the weights are left-endpoint cell
/// masses, exactly as in the defining formula; the top cell reaches past `A`
/// and its mass is whatever `F` assigns there (zero for the uniform null).
#[derive(Debug, Clone)]
pub struct DiscreteOperator {
    pub dist: NullDistribution,
    pub m: usize,
    pub a: f64,
    pub kernel_tag: KernelTag,
    pub matrix: DMatrix<f64>,
    weights: Vec<f64>,
}

impl DiscreteOperator {
    pub fn dim(&self) -> usize {
        2 * self.m + 1
    }

    /// Grid point for matrix row `row` (row 0 is `i = -m`).
    pub fn node(&self, row: usize) -> f64 {
        self.a * (row as f64 - self.m as f64) / self.m as f64
    }

    /// `√ΔF` weight of row `row`.
    pub fn weight(&self, row: usize) -> f64 {
        self.weights[row]
    }

    /// Unweighted kernel value `κ(x_row, x_col)`.
    pub fn kernel_value(&self, row: usize, col: usize) -> f64 {
        let n = self.dim();
        assert!(row < n && col < n);
        let i = row as i64 - self.m as i64;
        let j = col as i64 - self.m as i64;
        let step = self.a / self.m as f64;
        match self.kernel_tag {
            KernelTag::J => {
                let f = |k: i64| self.dist.cdf(step * k.abs() as f64);
                2.0 / 3.0 * (f(i + j) - f(i - j))
            }
            KernelTag::K(t) => xi_index(i, j, step, t),
        }
    }
}

fn xi_index(i: i64, j: i64, step: f64, t: f64) -> f64 {
    ((step * (i - j).abs() as f64) < t) as i8 as f64 - ((step * (i + j).abs() as f64) < t) as i8 as f64
}

/// Builds the `(2m+1) × (2m+1)` Nyström matrix for `dist`.
///
/// `t` is required for [`KernelTag::K`] and ignored otherwise; `a` overrides
/// the null's truncation bound.
pub fn build_discrete_operator(
    dist: NullDistribution,
    kernel_tag: KernelTag,
    m: usize,
    a: Option<f64>,
) -> Result<DiscreteOperator> {
    let a = match a {
        Some(a) if a > 0.0 && a.is_finite() => a,
        Some(a) => {
            return Err(Error::OutOfRange {
                name: "A",
                value: a,
                range: "(0, inf)".into(),
            })
        }
        None => dist.spectral_bound()?,
    };
    if dist == NullDistribution::Cauchy {
        return Err(Error::NoTruncation(dist.name()));
    }
    if m < 10 {
        return Err(Error::OutOfRange {
            name: "m",
            value: m as f64,
            range: "[10, inf)".into(),
        });
    }
    if let KernelTag::K(t) = kernel_tag {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::OutOfRange {
                name: "t",
                value: t,
                range: "(0, inf)".into(),
            });
        }
    }
    let mi = m as i64;
    let step = a / m as f64;
    let n = 2 * m + 1;
    let cdf_at = |k: i64| dist.cdf(step * k as f64);
    let weights: Vec<f64> = (-mi..=mi)
        .map(|i| (cdf_at(i + 1) - cdf_at(i)).max(0.0).sqrt())
        .collect();
    let matrix = match kernel_tag {
        KernelTag::J => {
            // φ depends on the grid only through |i ± j| ∈ [0, 2m]
            let f: Vec<f64> = (0..=2 * mi).map(cdf_at).collect();
            DMatrix::from_fn(n, n, |r, c| {
                let i = r as i64 - mi;
                let j = c as i64 - mi;
                let phi = 2.0 / 3.0 * (f[(i + j).unsigned_abs() as usize] - f[(i - j).unsigned_abs() as usize]);
                phi * (weights[r] * weights[c])
            })
        }
        KernelTag::K(t) => DMatrix::from_fn(n, n, |r, c| {
            let i = r as i64 - mi;
            let j = c as i64 - mi;
            xi_index(i, j, step, t) * (weights[r] * weights[c])
        }),
    };
    Ok(DiscreteOperator {
        dist,
        m,
        a,
        kernel_tag,
        matrix,
        weights,
    })
}
