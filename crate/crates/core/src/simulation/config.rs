use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::distributions::{Alternative, AlternativeFamily, NullDistribution};
use crate::error::{Error, Result};
use crate::statistics::Statistic;

/// How step (v) of the warp-speed procedure compares the two empirical
/// distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Fraction of `T_r` above the 95th percentile of the sign-flipped `T*_r`.
    #[default]
    Standard,
    /// Fraction of `T*_r` above the 95th percentile of `T_r`.
    Printed,
}

/// How the KS baseline gets its critical value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KsCalibration {
    /// The exact distribution-free region.
    #[default]
    Exact,
    /// The `1 - level` percentile of `null_reps` draws under the null, with a strict `>`.
    Simulated,
}

/// One power study: a family, a θ grid, a sample size and the statistics to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerStudyConfig {
    #[serde(default)]
    pub label: Option<String>,
    pub null_dist: NullDistribution,
    pub alternative: Alternative,
    pub theta_values: Vec<f64>,
    pub n: usize,
    #[serde(rename = "N")]
    pub replications: usize,
    pub level: f64,
    pub statistics: Vec<Statistic>,
    pub seed: u64,
    pub orientation: Orientation,
    #[serde(default)]
    pub ks_calibration: KsCalibration,
    /// Null draws used by the simulated KS calibration.
    pub null_reps: usize,
}

impl PowerStudyConfig {
    pub const DEFAULT_LEVEL: f64 = 0.05;
    pub const DEFAULT_NULL_REPS: usize = 10_000;

    pub fn new(null_dist: NullDistribution, alternative: Alternative, theta_values: Vec<f64>, n: usize, replications: usize) -> Self {
        Self {
            label: None,
            null_dist,
            alternative,
            theta_values,
            n,
            replications,
            level: Self::DEFAULT_LEVEL,
            statistics: Statistic::ALL.to_vec(),
            seed: 0,
            orientation: Orientation::Standard,
            ks_calibration: KsCalibration::Exact,
            null_reps: Self::DEFAULT_NULL_REPS,
        }
    }

    pub fn family(&self) -> Result<AlternativeFamily> {
        AlternativeFamily::new(self.alternative, self.null_dist)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replications < 100 {
            return Err(Error::OutOfRange {
                name: "N",
                value: self.replications as f64,
                range: "[100, inf)".into(),
            });
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::OutOfRange {
                name: "level",
                value: self.level,
                range: "(0, 1)".into(),
            });
        }
        if self.theta_values.is_empty() {
            return Err(Error::InvalidParameter("thetas must not be empty".into()));
        }
        if self.statistics.is_empty() {
            return Err(Error::InvalidParameter("stats must not be empty".into()));
        }
        if self.statistics.contains(&Statistic::Ks) && self.ks_calibration == KsCalibration::Simulated && self.null_reps < 100 {
            return Err(Error::OutOfRange {
                name: "null_reps",
                value: self.null_reps as f64,
                range: "[100, inf)".into(),
            });
        }
        let min_n = self.statistics.iter().map(|s| s.min_n()).max().unwrap_or(1);
        if self.n < min_n {
            return Err(Error::OutOfRange {
                name: "n",
                value: self.n as f64,
                range: format!("[{min_n}, inf)"),
            });
        }
        let fam = self.family()?;
        for &t in &self.theta_values {
            fam.check_theta(t)?;
        }
        Ok(())
    }

    /// Canonical `key=value` form, keys in a fixed order. Parsing it back
    /// gives the same config.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        if let Some(l) = &self.label {
            let _ = writeln!(s, "[{l}]");
        }
        let alt = match self.alternative {
            Alternative::G4 { .. } => "g4",
            Alternative::G6 { .. } => "g6",
            a => return self.kv_body(&a.label(), None, s),
        };
        self.kv_body(alt, self.alternative.beta(), s)
    }

    fn kv_body(&self, alt: &str, beta: Option<f64>, mut s: String) -> String {
        let join = |v: Vec<String>| v.join(",");
        let _ = writeln!(s, "null={}", self.null_dist);
        let _ = writeln!(s, "alt={alt}");
        if let Some(b) = beta {
            let _ = writeln!(s, "beta={b:?}");
        }
        let _ = writeln!(s, "thetas={}", join(self.theta_values.iter().map(|t| format!("{t:?}")).collect()));
        let _ = writeln!(s, "n={}", self.n);
        let _ = writeln!(s, "N={}", self.replications);
        let _ = writeln!(s, "level={:?}", self.level);
        let _ = writeln!(s, "stats={}", join(self.statistics.iter().map(|t| t.name().to_string()).collect()));
        let _ = writeln!(s, "seed={}", self.seed);
        let _ = writeln!(s, "orientation={}", match self.orientation {
            Orientation::Standard => "standard",
            Orientation::Printed => "printed",
        });
        let _ = writeln!(s, "ks_calibration={}", match self.ks_calibration {
            KsCalibration::Exact => "exact",
            KsCalibration::Simulated => "simulated",
        });
        let _ = writeln!(s, "null_reps={}", self.null_reps);
        s
    }

    /// Hex SHA-256 prefix of the canonical form; names resumable output.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_kv().as_bytes());
        hex::encode(&digest[..8])
    }
}

#[derive(Default)]
struct Draft {
    label: Option<String>,
    first_line: usize,
    entries: Vec<(usize, String, String)>,
}

/// Parses one or more studies in `key=value` form.
///
/// Blank lines and lines starting with `#` are ignored. A line `[label]`
/// starts a new study; keys before the first header form an unlabelled
/// study. Keys: `null`, `alt`, `beta`, `thetas`, `n`, `N`, `level`, `stats`,
/// `seed`, `orientation`, `ks_calibration`, `null_reps`. `null`, `alt`, `thetas` and `n` are
/// required.
pub fn parse_configs(text: &str) -> Result<Vec<PowerStudyConfig>> {
    let mut drafts: Vec<Draft> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let label = rest.strip_suffix(']').ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("unterminated section header `{line}`"),
            })?;
            drafts.push(Draft {
                label: Some(label.trim().to_string()),
                first_line: line_no,
                entries: Vec::new(),
            });
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("expected key=value, got `{line}`"),
        })?;
        if drafts.is_empty() {
            drafts.push(Draft {
                first_line: line_no,
                ..Default::default()
            });
        }
        drafts.last_mut().unwrap().entries.push((line_no, k.trim().to_string(), v.trim().to_string()));
    }
    if drafts.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no study found".into(),
        });
    }
    drafts.into_iter().map(build).collect()
}

pub fn load_configs(path: &Path) -> Result<Vec<PowerStudyConfig>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_configs(&text)
}

fn build(d: Draft) -> Result<PowerStudyConfig> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let num = |line: usize, key: &str, v: &str| -> Result<f64> {
        v.parse::<f64>().map_err(|_| err(line, format!("{key}: `{v}` is not a number")))
    };
    let int = |line: usize, key: &str, v: &str| -> Result<u64> {
        v.parse::<u64>().map_err(|_| err(line, format!("{key}: `{v}` is not a non-negative integer")))
    };
    let mut null = None;
    let mut alt: Option<(usize, String)> = None;
    let mut beta = None;
    let mut thetas = None;
    let mut n = None;
    let mut reps = None;
    let mut level = PowerStudyConfig::DEFAULT_LEVEL;
    let mut stats = Statistic::ALL.to_vec();
    let mut seed = 0;
    let mut orientation = Orientation::Standard;
    let mut ks_calibration = KsCalibration::Exact;
    let mut null_reps = PowerStudyConfig::DEFAULT_NULL_REPS;
    for (line, key, v) in &d.entries {
        let line = *line;
        let wrap = |e: Error| err(line, e.to_string());
        match key.as_str() {
            "null" => null = Some(v.parse::<NullDistribution>().map_err(wrap)?),
            "alt" => alt = Some((line, v.clone())),
            "beta" => beta = Some(num(line, key, v)?),
            "thetas" | "theta" => {
                thetas = Some(
                    v.split(',')
                        .map(|t| num(line, key, t.trim()))
                        .collect::<Result<Vec<f64>>>()?,
                )
            }
            "n" => n = Some(int(line, key, v)? as usize),
            "N" => reps = Some(int(line, key, v)? as usize),
            "level" => level = num(line, key, v)?,
            "stats" => {
                stats = v
                    .split(',')
                    .map(|s| s.trim().parse::<Statistic>().map_err(wrap))
                    .collect::<Result<Vec<_>>>()?
            }
            "seed" => seed = int(line, key, v)?,
            "orientation" => {
                orientation = match v.to_ascii_lowercase().as_str() {
                    "standard" => Orientation::Standard,
                    "printed" => Orientation::Printed,
                    _ => return Err(err(line, format!("orientation must be standard or printed, got `{v}`"))),
                }
            }
            "ks_calibration" => {
                ks_calibration = match v.to_ascii_lowercase().as_str() {
                    "exact" => KsCalibration::Exact,
                    "simulated" => KsCalibration::Simulated,
                    _ => return Err(err(line, format!("ks_calibration must be exact or simulated, got `{v}`"))),
                }
            }
            "null_reps" => null_reps = int(line, key, v)? as usize,
            _ => return Err(err(line, format!("unknown key `{key}`"))),
        }
    }
    let missing = |k: &str| err(d.first_line, format!("study is missing `{k}`"));
    let (alt_line, alt) = alt.ok_or_else(|| missing("alt"))?;
    let alternative = Alternative::parse(&alt, beta).map_err(|e| err(alt_line, e.to_string()))?;
    let cfg = PowerStudyConfig {
        label: d.label,
        null_dist: null.ok_or_else(|| missing("null"))?,
        alternative,
        theta_values: thetas.ok_or_else(|| missing("thetas"))?,
        n: n.ok_or_else(|| missing("n"))?,
        replications: reps.unwrap_or(10_000),
        level,
        statistics: stats,
        seed,
        orientation,
        ks_calibration,
        null_reps,
    };
    cfg.validate().map_err(|e| err(d.first_line, e.to_string()))?;
    Ok(cfg)
}
