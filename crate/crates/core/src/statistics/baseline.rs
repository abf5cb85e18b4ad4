use statrs::distribution::{Binomial, Discrete};

use crate::error::{Error, Result};

/// Standardized two-sided sign statistic `|#{Xi > 0} - n/2| / (√n / 2)`.
pub fn compute_sign_statistic(x: &[f64]) -> Result<f64> {
    let n = x.len();
    if n == 0 {
        return Err(Error::SampleTooSmall {
            statistic: "sign",
            required: 1,
            got: 0,
        });
    }
    let positive = x.iter().filter(|&&v| v > 0.0).count() as f64;
    let half = n as f64 / 2.0;
    Ok((positive - half).abs() / ((n as f64).sqrt() / 2.0))
}

/// Kolmogorov–Smirnov symmetry statistic `sup_x |1 - F_n(x) - F_n(-x⁻)|`.
///
/// With `F_n(-x⁻) = #{Xi < -x}/n` the function is `(#{Xi > x} - #{Xi < -x})/n`,
/// a right-continuous step function jumping only at `±Xi`; it is evaluated at
/// every jump.
pub fn compute_ks_symmetry(x: &[f64]) -> Result<f64> {
    let n = x.len();
    if n == 0 {
        return Err(Error::SampleTooSmall {
            statistic: "KS",
            required: 1,
            got: 0,
        });
    }
    let mut s = x.to_vec();
    s.sort_by(|a, b| a.total_cmp(b));
    let gap = |c: f64| {
        let above = n - s.partition_point(|&v| v <= c);
        let below = s.partition_point(|&v| v < -c);
        above.abs_diff(below)
    };
    let best = s.iter().flat_map(|&v| [gap(v), gap(-v)]).max().unwrap_or(0);
    Ok(best as f64 / n as f64)
}

/// Exact binomial critical region of the two-sided sign test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignCritical {
    /// Reject when `|#{Xi > 0} - n/2| >= deviation`.
    pub deviation: f64,
    /// Same threshold on the standardized statistic.
    pub statistic: f64,
    /// Exact null probability of the region (at most the level).
    pub size: f64,
}

/// Smallest deviation whose two-sided exact tail is at most `level`.
pub fn sign_critical_value(n: usize, level: f64) -> Result<SignCritical> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::OutOfRange {
            name: "level",
            value: level,
            range: "(0, 1)".into(),
        });
    }
    let binom = Binomial::new(0.5, n as u64).expect("valid binomial");
    let half = n as f64 / 2.0;
    let pmf: Vec<f64> = (0..=n as u64).map(|k| binom.pmf(k)).collect();
    let tail = |dev: f64| -> f64 {
        pmf.iter()
            .enumerate()
            .filter(|(k, _)| (*k as f64 - half).abs() >= dev - 1e-9)
            .map(|(_, p)| p)
            .sum()
    };
    let mut devs: Vec<f64> = (0..=n).map(|k| (k as f64 - half).abs()).collect();
    devs.sort_by(|a, b| a.total_cmp(b));
    devs.dedup();
    let (deviation, size) = devs
        .iter()
        .map(|&d| (d, tail(d)))
        .find(|&(_, p)| p <= level)
        .unwrap_or((f64::INFINITY, 0.0));
    Ok(SignCritical {
        deviation,
        statistic: deviation / (n as f64).sqrt() * 2.0,
        size,
    })
}

/// Exact critical region of the KS symmetry statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsCritical {
    /// Reject when `n·KS >= count`.
    pub count: usize,
    /// Same threshold on the statistic itself, `count/n`.
    pub statistic: f64,
    /// Exact null probability of the region (at most the level).
    pub size: f64,
}

/// Smallest threshold whose exact null tail is at most `level`.
///
/// Under any continuous symmetric null, `n·KS` is the maximum of `|S_k|` for
/// the walk of signs taken in decreasing order of `|Xi|`, a fair ±1 walk of
/// `n` steps. Tails come from the walk absorbed at `±m`.
pub fn ks_critical_value(n: usize, level: f64) -> Result<KsCritical> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::OutOfRange {
            name: "level",
            value: level,
            range: "(0, 1)".into(),
        });
    }
    let tail = |m: usize| -> f64 {
        // states -(m-1)..=(m-1), offset by m-1
        let width = 2 * m - 1;
        let mut p = vec![0.0; width];
        p[m - 1] = 1.0;
        for _ in 0..n {
            let mut q = vec![0.0; width];
            for (i, &v) in p.iter().enumerate() {
                if v == 0.0 {
                    continue;
                }
                if i > 0 {
                    q[i - 1] += 0.5 * v;
                }
                if i + 1 < width {
                    q[i + 1] += 0.5 * v;
                }
            }
            p = q;
        }
        1.0 - p.iter().sum::<f64>()
    };
    let (count, size) = (1..=n)
        .map(|m| (m, tail(m)))
        .find(|&(_, p)| p <= level)
        .unwrap_or((n + 1, 0.0));
    Ok(KsCritical {
        count,
        statistic: count as f64 / n as f64,
        size,
    })
}
