use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{KsCalibration, Orientation, PowerStudyConfig};
use crate::error::{Error, Result};
use crate::rng::{rademacher, StreamFactory, StreamRng};
use crate::statistics::{ks_critical_value, sign_critical_value, Statistic};

/// Empirical power of one statistic at one θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    pub statistic: Statistic,
    pub theta: f64,
    pub power: f64,
    /// Binomial standard error `√(p(1-p)/N)`.
    pub std_error: f64,
    /// Rejection threshold used (warp-speed: the empirical percentile).
    pub critical_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerReport {
    pub config: PowerStudyConfig,
    pub rows: Vec<PowerRow>,
    pub wall_time_secs: f64,
}

impl PowerReport {
    pub fn power(&self, statistic: Statistic, theta: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.statistic == statistic && r.theta == theta)
            .map(|r| r.power)
    }

    fn merge(mut self, other: PowerReport) -> PowerReport {
        self.rows.extend(other.rows);
        self.rows.sort_by(|a, b| a.theta.total_cmp(&b.theta).then(a.statistic.cmp(&b.statistic)));
        self.wall_time_secs += other.wall_time_secs;
        self
    }
}

/// Linear-interpolation sample quantile (the `(N-1)p` rule).
pub fn empirical_quantile(values: &[f64], p: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    quantile_sorted(&v, p)
}

fn quantile_sorted(v: &[f64], p: f64) -> f64 {
    assert!(!v.is_empty());
    let h = (v.len() - 1) as f64 * p.clamp(0.0, 1.0);
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(v.len() - 1);
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

fn fraction_above(values: &[f64], threshold: f64) -> f64 {
    values.iter().filter(|&&v| v > threshold).count() as f64 / values.len() as f64
}

fn row(statistic: Statistic, theta: f64, power: f64, n: usize, critical_value: f64) -> PowerRow {
    PowerRow {
        statistic,
        theta,
        power,
        std_error: (power * (1.0 - power) / n as f64).sqrt(),
        critical_value,
    }
}

/// Replication `r` at θ index `g`: the alternative sample and the signs,
/// both from the replication's own stream (sample first, then signs).
fn replicate(cfg: &PowerStudyConfig, factory: &StreamFactory, g: usize, r: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let fam = cfg.family()?;
    let mut rng: StreamRng = factory.substream(g as u32, r as u64);
    let x = fam.sample(cfg.theta_values[g], cfg.n, &mut rng)?;
    let u = rademacher(&mut rng, cfg.n);
    Ok((x, u))
}

fn split(stats: &[Statistic]) -> (Vec<Statistic>, Vec<Statistic>) {
    stats.iter().partition(|s| matches!(s, Statistic::Jn | Statistic::Kn))
}

/// Warp-speed bootstrap power of `J_n`/`K_n`.
///
/// Each replication draws a sample `x` from the alternative and Rademacher
/// signs `u`, and evaluates `T = T(x)` and `T* = T(x·u)`. With the standard
/// orientation the power is the fraction of `T` above the `1 - level`
/// percentile of the `T*` values; the printed orientation swaps the roles.
/// `J_n` enters through `|J_n|`.
pub fn warp_speed_power(cfg: &PowerStudyConfig) -> Result<PowerReport> {
    cfg.validate()?;
    let start = Instant::now();
    let (warp, _) = split(&cfg.statistics);
    if warp.is_empty() {
        return Err(Error::InvalidParameter("warp-speed power needs Jn or Kn".into()));
    }
    let factory = StreamFactory::new(cfg.seed);
    let mut rows = Vec::new();
    for (g, &theta) in cfg.theta_values.iter().enumerate() {
        let pairs: Vec<Vec<(f64, f64)>> = (0..cfg.replications)
            .into_par_iter()
            .map(|r| {
                let (x, u) = replicate(cfg, &factory, g, r)?;
                let y: Vec<f64> = x.iter().zip(&u).map(|(a, b)| a * b).collect();
                warp.iter()
                    .map(|s| Ok((s.test_value(&x)?, s.test_value(&y)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for (k, &stat) in warp.iter().enumerate() {
            let t: Vec<f64> = pairs.iter().map(|p| p[k].0).collect();
            let t_star: Vec<f64> = pairs.iter().map(|p| p[k].1).collect();
            let (reference, tested) = match cfg.orientation {
                Orientation::Standard => (&t_star, &t),
                Orientation::Printed => (&t, &t_star),
            };
            let crit = empirical_quantile(reference, 1.0 - cfg.level);
            rows.push(row(stat, theta, fraction_above(tested, crit), cfg.replications, crit));
        }
    }
    Ok(PowerReport {
        config: cfg.clone(),
        rows,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

/// Stream group reserved for KS null calibration draws.
const NULL_GROUP: u32 = u32::MAX;

/// Classical Monte Carlo power of the KS and sign baselines.
///
/// The sign test uses its exact binomial region. The KS test uses its exact
/// distribution-free region, or with [`KsCalibration::Simulated`] the
/// `1 - level` empirical percentile of `null_reps` statistics simulated
/// under the null itself. Rejection fractions are taken over the
/// same alternative samples the warp-speed statistics see.
pub fn classical_power(cfg: &PowerStudyConfig) -> Result<PowerReport> {
    cfg.validate()?;
    let start = Instant::now();
    let (_, classical) = split(&cfg.statistics);
    if classical.is_empty() {
        return Err(Error::InvalidParameter("classical power needs KS or sign".into()));
    }
    let factory = StreamFactory::new(cfg.seed);
    let mut crit = Vec::new();
    for &stat in &classical {
        let c = match stat {
            Statistic::Sign => sign_critical_value(cfg.n, cfg.level)?.statistic,
            Statistic::Ks if cfg.ks_calibration == KsCalibration::Exact => ks_critical_value(cfg.n, cfg.level)?.statistic,
            _ => {
                let null: Vec<f64> = (0..cfg.null_reps)
                    .into_par_iter()
                    .map(|r| {
                        let mut rng = factory.substream(NULL_GROUP, r as u64);
                        stat.test_value(&cfg.null_dist.sample(cfg.n, &mut rng))
                    })
                    .collect::<Result<_>>()?;
                empirical_quantile(&null, 1.0 - cfg.level)
            }
        };
        crit.push(c);
    }
    let mut rows = Vec::new();
    for (g, &theta) in cfg.theta_values.iter().enumerate() {
        let rejections: Vec<Vec<bool>> = (0..cfg.replications)
            .into_par_iter()
            .map(|r| {
                let (x, _) = replicate(cfg, &factory, g, r)?;
                classical
                    .iter()
                    .zip(&crit)
                    .map(|(s, &c)| Ok(reject(cfg, *s, s.test_value(&x)?, c)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for (k, &stat) in classical.iter().enumerate() {
            let hits = rejections.iter().filter(|v| v[k]).count();
            rows.push(row(stat, theta, hits as f64 / cfg.replications as f64, cfg.replications, crit[k]));
        }
    }
    Ok(PowerReport {
        config: cfg.clone(),
        rows,
        wall_time_secs: start.elapsed().as_secs_f64(),
    })
}

fn reject(cfg: &PowerStudyConfig, stat: Statistic, value: f64, crit: f64) -> bool {
    // exact regions are closed; guard the thresholds against rounding
    match stat {
        Statistic::Sign => value >= crit - 1e-9,
        Statistic::Ks if cfg.ks_calibration == KsCalibration::Exact => value >= crit - 1e-9,
        _ => value > crit,
    }
}

/// Runs whichever of the two procedures the configured statistics need.
pub fn run_power_study(cfg: &PowerStudyConfig) -> Result<PowerReport> {
    let (warp, classical) = split(&cfg.statistics);
    match (warp.is_empty(), classical.is_empty()) {
        (false, true) => warp_speed_power(cfg),
        (true, false) => classical_power(cfg),
        _ => Ok(warp_speed_power(cfg)?.merge(classical_power(cfg)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Alternative, NullDistribution};

    #[test]
    fn quantile_matches_linear_rule() {
        let v = [5.0, 1.0, 3.0, 2.0, 4.0];
        assert_eq!(empirical_quantile(&v, 0.5), 3.0);
        assert_eq!(empirical_quantile(&v, 0.95), 4.8);
        assert_eq!(empirical_quantile(&v, 0.0), 1.0);
        assert_eq!(empirical_quantile(&v, 1.0), 5.0);
    }

    fn small() -> PowerStudyConfig {
        let mut c = PowerStudyConfig::new(NullDistribution::Normal, Alternative::G5, vec![0.0, 1.0], 20, 300);
        c.null_reps = 300;
        c.seed = 11;
        c
    }

    #[test]
    fn report_covers_every_cell() {
        let r = run_power_study(&small()).unwrap();
        assert_eq!(r.rows.len(), 8);
        assert!(r.rows.iter().all(|r| (0.0..=1.0).contains(&r.power)));
        assert!(r.power(Statistic::Jn, 1.0).unwrap() > r.power(Statistic::Jn, 0.0).unwrap());
    }

    #[test]
    fn deterministic() {
        let a = run_power_study(&small()).unwrap();
        let b = run_power_study(&small()).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn procedures_reject_foreign_statistics() {
        let mut c = small();
        c.statistics = vec![Statistic::Ks];
        assert!(warp_speed_power(&c).is_err());
        c.statistics = vec![Statistic::Jn];
        assert!(classical_power(&c).is_err());
    }
}
