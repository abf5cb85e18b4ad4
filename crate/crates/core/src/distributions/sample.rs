use std::ops::Deref;

use rand::Rng;
use serde::Serialize;

use super::{AlternativeFamily, NullDistribution};
use crate::error::{Error, Result};

/// Finite real observations under test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample(Vec<f64>);

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Sample(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Multiplies every observation by the matching sign.
    pub fn flipped(&self, signs: &[f64]) -> Sample {
        Sample(self.0.iter().zip(signs).map(|(x, s)| x * s).collect())
    }
}

impl Deref for Sample {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Sample {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// `n` inverse-cdf draws from a null law.
pub fn sample_null<R: Rng + ?Sized>(dist: NullDistribution, n: usize, rng: &mut R) -> Result<Sample> {
    if n == 0 {
        return Err(Error::InvalidParameter("sample size must be at least 1".into()));
    }
    Ok(Sample(dist.sample(n, rng)))
}

/// `n` draws from `G(·; θ)`.
pub fn sample_alternative<R: Rng + ?Sized>(
    family: &AlternativeFamily,
    theta: f64,
    n: usize,
    rng: &mut R,
) -> Result<Sample> {
    family.sample(theta, n, rng).map(Sample)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(Sample::new(vec![1.0, f64::NAN]), Err(Error::NonFinite(1))));
        assert!(Sample::new(vec![1.0, 2.0]).is_ok());
    }

    #[test]
    fn flip_applies_signs() {
        let s = Sample::new(vec![1.0, -2.0, 3.0]).unwrap();
        assert_eq!(s.flipped(&[-1.0, -1.0, 1.0]).values(), &[-1.0, 2.0, 3.0]);
    }
}
