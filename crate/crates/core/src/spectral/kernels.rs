use crate::distributions::NullDistribution;

/// Second projection of the `J_n` kernel,
/// `φ_F(s, t) = (2/3)(F(|s + t|) - F(|s - t|))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPhi {
    pub base: NullDistribution,
}

impl KernelPhi {
    pub fn new(base: NullDistribution) -> Self {
        Self { base }
    }

    pub fn evaluate(&self, s: f64, t: f64) -> f64 {
        2.0 / 3.0 * (self.base.cdf((s + t).abs()) - self.base.cdf((s - t).abs()))
    }
}

/// Kernel of the `K_n` process at a fixed threshold,
/// `ξ(s₁, s₂; t) = I{|s₁ - s₂| < t} - I{|s₁ + s₂| < t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelXi {
    pub threshold: f64,
}

impl KernelXi {
    pub fn new(threshold: f64) -> Self {
        Self { threshold }
    }

    pub fn evaluate(&self, s1: f64, s2: f64) -> i8 {
        ((s1 - s2).abs() < self.threshold) as i8 - ((s1 + s2).abs() < self.threshold) as i8
    }
}
