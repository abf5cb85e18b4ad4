//! The characterization-based statistics `J_n`, `K_n` and the sign and
//! Kolmogorov–Smirnov symmetry baselines.

mod baseline;
mod bootstrap;
mod jn;
mod kn;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use baseline::{compute_ks_symmetry, compute_sign_statistic, ks_critical_value, sign_critical_value, KsCritical, SignCritical};
pub use bootstrap::{bootstrap_p_value, TestReport};
pub use jn::{compute_jn, jn_brute_force};
pub use kn::{compute_kn, kn_grid_oracle};

use crate::error::{Error, Result};

/// Which statistic to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Statistic {
    Jn,
    Kn,
    #[serde(rename = "KS")]
    Ks,
    #[serde(rename = "sign")]
    Sign,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [Statistic::Jn, Statistic::Kn, Statistic::Ks, Statistic::Sign];

    pub fn name(&self) -> &'static str {
        match self {
            Statistic::Jn => "Jn",
            Statistic::Kn => "Kn",
            Statistic::Ks => "KS",
            Statistic::Sign => "sign",
        }
    }

    /// Smallest sample the statistic accepts.
    pub fn min_n(&self) -> usize {
        match self {
            Statistic::Jn => 3,
            Statistic::Kn => 2,
            Statistic::Ks | Statistic::Sign => 1,
        }
    }

    /// Raw value (`J_n` keeps its sign).
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        match self {
            Statistic::Jn => compute_jn(x),
            Statistic::Kn => compute_kn(x),
            Statistic::Ks => compute_ks_symmetry(x),
            Statistic::Sign => compute_sign_statistic(x),
        }
    }

    /// Value whose large realizations are significant: `|J_n|` for the
    /// integral statistic, the raw value otherwise.
    pub fn test_value(&self, x: &[f64]) -> Result<f64> {
        let v = self.evaluate(x)?;
        Ok(match self {
            Statistic::Jn => v.abs(),
            _ => v,
        })
    }

    /// `n·J_n`, `n·K_n`, `√n·KS`; the sign statistic is already standardized.
    pub fn scale(&self, value: f64, n: usize) -> f64 {
        match self {
            Statistic::Jn | Statistic::Kn => n as f64 * value,
            Statistic::Ks => (n as f64).sqrt() * value,
            Statistic::Sign => value,
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "jn" | "j" => Ok(Statistic::Jn),
            "kn" | "k" => Ok(Statistic::Kn),
            "ks" => Ok(Statistic::Ks),
            "sign" | "s" => Ok(Statistic::Sign),
            _ => Err(Error::UnknownName {
                kind: "statistic",
                name: s.to_string(),
            }),
        }
    }
}
