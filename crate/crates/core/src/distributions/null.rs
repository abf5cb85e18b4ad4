use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::rng::open_unit;

/// A continuous null law symmetric about zero.
///
/// The uniform null lives on [-1, 1]; the statistics are scale free so no
/// generality is lost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NullDistribution {
    Uniform,
    Normal,
    Logistic,
    Laplace,
    Cauchy,
}

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).expect("standard normal")
}

impl NullDistribution {
    pub const ALL: [NullDistribution; 5] = [
        NullDistribution::Uniform,
        NullDistribution::Normal,
        NullDistribution::Logistic,
        NullDistribution::Laplace,
        NullDistribution::Cauchy,
    ];

    /// The four nulls with a finite truncation bound.
    pub const SPECTRAL: [NullDistribution; 4] = [
        NullDistribution::Uniform,
        NullDistribution::Normal,
        NullDistribution::Logistic,
        NullDistribution::Laplace,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NullDistribution::Uniform => "uniform",
            NullDistribution::Normal => "normal",
            NullDistribution::Logistic => "logistic",
            NullDistribution::Laplace => "laplace",
            NullDistribution::Cauchy => "cauchy",
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            NullDistribution::Uniform => ((x + 1.0) / 2.0).clamp(0.0, 1.0),
            NullDistribution::Normal => std_normal().cdf(x),
            NullDistribution::Logistic => {
                if x >= 0.0 {
                    1.0 / (1.0 + (-x).exp())
                } else {
                    let e = x.exp();
                    e / (1.0 + e)
                }
            }
            NullDistribution::Laplace => {
                if x < 0.0 {
                    0.5 * x.exp()
                } else {
                    1.0 - 0.5 * (-x).exp()
                }
            }
            NullDistribution::Cauchy => 0.5 + x.atan() / PI,
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match self {
            NullDistribution::Uniform => {
                if x.abs() <= 1.0 {
                    0.5
                } else {
                    0.0
                }
            }
            NullDistribution::Normal => std_normal().pdf(x),
            NullDistribution::Logistic => {
                let e = (-x.abs()).exp();
                e / ((1.0 + e) * (1.0 + e))
            }
            NullDistribution::Laplace => 0.5 * (-x.abs()).exp(),
            NullDistribution::Cauchy => 1.0 / (PI * (1.0 + x * x)),
        }
    }

    /// Derivative of the density (zero at Laplace's kink and inside the
    /// uniform support).
    pub fn pdf_deriv(&self, x: f64) -> f64 {
        match self {
            NullDistribution::Uniform => 0.0,
            NullDistribution::Normal => -x * self.pdf(x),
            NullDistribution::Logistic => self.pdf(x) * (1.0 - 2.0 * self.cdf(x)),
            NullDistribution::Laplace => {
                if x == 0.0 {
                    0.0
                } else {
                    -x.signum() * self.pdf(x)
                }
            }
            NullDistribution::Cauchy => -2.0 * x / (PI * (1.0 + x * x).powi(2)),
        }
    }

    /// Inverse cdf on (0, 1).
    pub fn quantile(&self, p: f64) -> f64 {
        match self {
            NullDistribution::Uniform => 2.0 * p - 1.0,
            NullDistribution::Normal => std_normal().inverse_cdf(p),
            NullDistribution::Logistic => (p / (1.0 - p)).ln(),
            NullDistribution::Laplace => {
                if p < 0.5 {
                    (2.0 * p).ln()
                } else {
                    -(2.0 * (1.0 - p)).ln()
                }
            }
            NullDistribution::Cauchy => (PI * (p - 0.5)).tan(),
        }
    }

    /// Support cutoff used to discretize the integral operators.
    /// Cauchy carries `+inf`.
    pub fn truncation_a(&self) -> f64 {
        match self {
            NullDistribution::Uniform => 1.0,
            NullDistribution::Normal => 10.0,
            NullDistribution::Logistic | NullDistribution::Laplace => 30.0,
            NullDistribution::Cauchy => f64::INFINITY,
        }
    }

    /// Truncation bound, or an error for nulls that have none.
    pub fn spectral_bound(&self) -> Result<f64> {
        let a = self.truncation_a();
        if a.is_finite() {
            Ok(a)
        } else {
            Err(Error::NoTruncation(self.name()))
        }
    }

    /// Points where the density is not smooth.
    pub fn knots(&self) -> &'static [f64] {
        match self {
            NullDistribution::Uniform => &[-1.0, 1.0],
            NullDistribution::Laplace => &[0.0],
            _ => &[],
        }
    }

    /// Inverse-cdf draw.
    pub fn sample_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.quantile(open_unit(rng))
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<f64> {
        (0..n).map(|_| self.sample_one(rng)).collect()
    }
}

impl fmt::Display for NullDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NullDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NullDistribution::ALL
            .into_iter()
            .find(|d| d.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownName {
                kind: "distribution",
                name: s.to_string(),
            })
    }
}
