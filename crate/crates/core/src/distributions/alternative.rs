use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::NullDistribution;
use crate::error::{Error, Result};
use crate::quadrature::{composite, gl16};
use crate::rng::open_unit;

/// The seven departures from symmetry, indexed as g1..g7.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alternative {
    /// Lehmann: `F^(1+θ)`.
    G1,
    /// First Ley–Paindaveine: `F exp(-θ(1-F))`.
    G2,
    /// Second Ley–Paindaveine: `F - θ sin(πF)`.
    G3,
    /// Contamination with a Lehmann component: `(1-θ)F + θF^β`, β > 1.
    G4 { beta: f64 },
    /// Location shift: `F(x-θ)`.
    G5,
    /// Contamination with a shifted component: `(1-θ)F(x) + θF(x-β)`, β > 0.
    G6 { beta: f64 },
    /// Azzalini skewing: density `2F(θx)f(x)`.
    G7,
}

impl Alternative {
    /// Default shape parameters follow the usual table layout: g4(3), g6(1).
    pub const G4_DEFAULT_BETA: f64 = 3.0;
    pub const G6_DEFAULT_BETA: f64 = 1.0;

    /// Parses `g1`..`g7`, optionally with an inline shape parameter
    /// (`g4(3)`, `g6(1)`). An explicit `beta` takes precedence.
    pub fn parse(name: &str, beta: Option<f64>) -> Result<Self> {
        let name = name.trim().to_ascii_lowercase();
        let (head, inline) = match name.split_once('(') {
            Some((h, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| unknown(&name))?;
                let b: f64 = inner.trim().parse().map_err(|_| unknown(&name))?;
                (h.to_string(), Some(b))
            }
            None => (name.clone(), None),
        };
        let beta = beta.or(inline);
        let alt = match head.as_str() {
            "g1" => Alternative::G1,
            "g2" => Alternative::G2,
            "g3" => Alternative::G3,
            "g4" => Alternative::G4 {
                beta: beta.unwrap_or(Self::G4_DEFAULT_BETA),
            },
            "g5" => Alternative::G5,
            "g6" => Alternative::G6 {
                beta: beta.unwrap_or(Self::G6_DEFAULT_BETA),
            },
            "g7" => Alternative::G7,
            _ => return Err(unknown(&name)),
        };
        alt.validate()?;
        Ok(alt)
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Alternative::G4 { beta } if !(beta > 1.0 && beta.is_finite()) => Err(Error::OutOfRange {
                name: "beta",
                value: beta,
                range: "(1, inf) for g4".into(),
            }),
            Alternative::G6 { beta } if !(beta > 0.0 && beta.is_finite()) => Err(Error::OutOfRange {
                name: "beta",
                value: beta,
                range: "(0, inf) for g6".into(),
            }),
            _ => Ok(()),
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match *self {
            Alternative::G4 { beta } | Alternative::G6 { beta } => Some(beta),
            _ => None,
        }
    }

    /// Short label: `g1`, `g4(3)`, ...
    pub fn label(&self) -> String {
        match *self {
            Alternative::G1 => "g1".into(),
            Alternative::G2 => "g2".into(),
            Alternative::G3 => "g3".into(),
            Alternative::G4 { beta } => format!("g4({beta})"),
            Alternative::G5 => "g5".into(),
            Alternative::G6 { beta } => format!("g6({beta})"),
            Alternative::G7 => "g7".into(),
        }
    }
}

fn unknown(name: &str) -> Error {
    Error::UnknownName {
        kind: "alternative",
        name: name.to_string(),
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for Alternative {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for Alternative {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let label = String::deserialize(d)?;
        Alternative::parse(&label, None).map_err(serde::de::Error::custom)
    }
}

/// A parametric family `G(x; θ)` built on a symmetric base law, with `G(·; 0) = F`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlternativeFamily {
    pub alternative: Alternative,
    pub base: NullDistribution,
}

impl AlternativeFamily {
    pub fn new(alternative: Alternative, base: NullDistribution) -> Result<Self> {
        alternative.validate()?;
        Ok(Self { alternative, base })
    }

    pub fn label(&self) -> String {
        format!("{}/{}", self.base, self.alternative)
    }

    /// Closed interval of admissible θ.
    pub fn theta_range(&self) -> (f64, f64) {
        match self.alternative {
            Alternative::G1 | Alternative::G2 => (0.0, f64::INFINITY),
            Alternative::G3 => (0.0, 1.0 / PI),
            Alternative::G4 { .. } | Alternative::G6 { .. } => (0.0, 1.0),
            Alternative::G5 | Alternative::G7 => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn check_theta(&self, theta: f64) -> Result<()> {
        let (lo, hi) = self.theta_range();
        if theta.is_finite() && theta >= lo && theta <= hi {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                range: format!("[{lo}, {hi}] for {}", self.alternative),
            })
        }
    }

    /// `G(x; θ)`. The formulas are evaluated as written for any θ;
    /// use [`check_theta`](Self::check_theta) to enforce the admissible range.
    pub fn cdf_at(&self, x: f64, theta: f64) -> f64 {
        let f = &self.base;
        match self.alternative {
            Alternative::G1 => f.cdf(x).powf(1.0 + theta),
            Alternative::G2 => {
                let u = f.cdf(x);
                u * (-theta * (1.0 - u)).exp()
            }
            Alternative::G3 => {
                let u = f.cdf(x);
                u - theta * (PI * u).sin()
            }
            Alternative::G4 { beta } => {
                let u = f.cdf(x);
                (1.0 - theta) * u + theta * u.powf(beta)
            }
            Alternative::G5 => f.cdf(x - theta),
            Alternative::G6 { beta } => (1.0 - theta) * f.cdf(x) + theta * f.cdf(x - beta),
            Alternative::G7 => {
                // integrate 2 F(θx) f(x) in probability scale: ∫_0^{F(x)} 2 F(θ Q(p)) dp
                let upper = f.cdf(x);
                if upper <= 0.0 {
                    return 0.0;
                }
                // F(θQ(p)) has a kink wherever θQ(p) crosses a knot of F
                let kinks: Vec<f64> = if theta != 0.0 {
                    f.knots().iter().map(|k| f.cdf(k / theta)).collect()
                } else {
                    Vec::new()
                };
                composite(gl16(), 0.0, upper, &kinks, 64, |p| {
                    2.0 * f.cdf(theta * f.quantile(p))
                })
            }
        }
    }

    /// `g(x; θ)`.
    pub fn density_at(&self, x: f64, theta: f64) -> f64 {
        let f = &self.base;
        match self.alternative {
            Alternative::G1 => {
                let d = f.pdf(x);
                if d == 0.0 {
                    0.0
                } else {
                    (1.0 + theta) * f.cdf(x).powf(theta) * d
                }
            }
            Alternative::G2 => {
                let u = f.cdf(x);
                f.pdf(x) * (-theta * (1.0 - u)).exp() * (1.0 + theta * u)
            }
            Alternative::G3 => f.pdf(x) * (1.0 - theta * PI * (PI * f.cdf(x)).cos()),
            Alternative::G4 { beta } => {
                let d = f.pdf(x);
                if d == 0.0 {
                    0.0
                } else {
                    d * ((1.0 - theta) + theta * beta * f.cdf(x).powf(beta - 1.0))
                }
            }
            Alternative::G5 => f.pdf(x - theta),
            Alternative::G6 { beta } => (1.0 - theta) * f.pdf(x) + theta * f.pdf(x - beta),
            Alternative::G7 => 2.0 * f.cdf(theta * x) * f.pdf(x),
        }
    }

    /// The score `h(x) = ∂g/∂θ (x; 0)`.
    pub fn score(&self, x: f64) -> f64 {
        let f = &self.base;
        let d = f.pdf(x);
        match self.alternative {
            Alternative::G1 => {
                let c = f.cdf(x);
                if d == 0.0 || c == 0.0 {
                    0.0
                } else {
                    d * (1.0 + c.ln())
                }
            }
            Alternative::G2 => d * (2.0 * f.cdf(x) - 1.0),
            Alternative::G3 => -PI * d * (PI * f.cdf(x)).cos(),
            Alternative::G4 { beta } => {
                if d == 0.0 {
                    0.0
                } else {
                    d * (beta * f.cdf(x).powf(beta - 1.0) - 1.0)
                }
            }
            Alternative::G5 => -f.pdf_deriv(x),
            Alternative::G6 { beta } => f.pdf(x - beta) - d,
            Alternative::G7 => 2.0 * x * f.pdf(0.0) * d,
        }
    }

    /// The score as a closure.
    pub fn score_h(&self) -> impl Fn(f64) -> f64 + '_ {
        move |x| self.score(x)
    }

    /// Points where the score is not smooth.
    pub fn knots(&self) -> Vec<f64> {
        let mut k: Vec<f64> = self.base.knots().to_vec();
        if let Alternative::G6 { beta } = self.alternative {
            k.extend(self.base.knots().iter().map(|x| x + beta));
        }
        if self.alternative == Alternative::G7 {
            k.push(0.0);
        }
        k
    }

    /// `n` i.i.d. draws from `G(·; θ)`.
    pub fn sample<R: Rng + ?Sized>(&self, theta: f64, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        self.check_theta(theta)?;
        if n == 0 {
            return Err(Error::InvalidParameter("sample size must be at least 1".into()));
        }
        let f = self.base;
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let x = match self.alternative {
                Alternative::G1 => f.quantile(open_unit(rng).powf(1.0 / (1.0 + theta))),
                Alternative::G2 | Alternative::G3 => {
                    let u = open_unit(rng);
                    self.invert_cdf(u, theta)?
                }
                Alternative::G4 { beta } => {
                    let u = open_unit(rng);
                    if rng.random::<f64>() < theta {
                        f.quantile(u.powf(1.0 / beta))
                    } else {
                        f.quantile(u)
                    }
                }
                Alternative::G5 => f.sample_one(rng) + theta,
                Alternative::G6 { beta } => {
                    let shifted = rng.random::<f64>() < theta;
                    f.sample_one(rng) + if shifted { beta } else { 0.0 }
                }
                Alternative::G7 => {
                    // selection representation: keep X when an independent
                    // uniform falls below F(θX), otherwise reflect it
                    let x = f.sample_one(rng);
                    if rng.random::<f64>() < f.cdf(theta * x) {
                        x
                    } else {
                        -x
                    }
                }
            };
            out.push(x);
        }
        Ok(out)
    }

    /// Solves `G(x; θ) = u` by bisection.
    pub fn invert_cdf(&self, u: f64, theta: f64) -> Result<f64> {
        let bound = self.base.quantile(1.0 - 1e-12).max(50.0);
        let (mut lo, mut hi) = (-bound, bound);
        let g = |x: f64| self.cdf_at(x, theta);
        if !(g(lo) <= u && g(hi) >= u) {
            return Err(Error::Bracketing(format!(
                "{} cdf does not bracket {u} on [{lo}, {hi}]",
                self.label()
            )));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * (1.0 + mid.abs()) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}
