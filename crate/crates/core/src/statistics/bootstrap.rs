use rayon::prelude::*;
use serde::Serialize;

use super::Statistic;
use crate::error::{Error, Result};
use crate::rng::{rademacher, StreamFactory};

/// Outcome of a single test on one data set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    pub statistic: Statistic,
    pub value: f64,
    pub scaled_value: f64,
    pub p_value: Option<f64>,
    pub n: usize,
    #[serde(rename = "B")]
    pub resamples: usize,
    pub seed: u64,
}

impl TestReport {
    /// Statistic only, no resampling.
    pub fn point(x: &[f64], statistic: Statistic) -> Result<Self> {
        let value = statistic.evaluate(x)?;
        Ok(TestReport {
            statistic,
            value,
            scaled_value: statistic.scale(value, x.len()),
            p_value: None,
            n: x.len(),
            resamples: 0,
            seed: 0,
        })
    }
}

/// Sign-flip resampling p-value.
///
/// Replicate `b` multiplies the data by Rademacher signs drawn from stream
/// `b` of `seed`, so the result does not depend on the thread count. The
/// add-one convention `(1 + #{T*_b >= T}) / (B + 1)` keeps p-values positive.
pub fn bootstrap_p_value(x: &[f64], statistic: Statistic, resamples: usize, seed: u64) -> Result<TestReport> {
    if resamples < 100 {
        return Err(Error::OutOfRange {
            name: "B",
            value: resamples as f64,
            range: "[100, inf)".into(),
        });
    }
    let mut report = TestReport::point(x, statistic)?;
    let observed = statistic.test_value(x)?;
    let streams = StreamFactory::new(seed);
    let exceed: usize = (0..resamples)
        .into_par_iter()
        .map(|b| {
            let mut rng = streams.stream(b as u64);
            let signs = rademacher(&mut rng, x.len());
            let y: Vec<f64> = x.iter().zip(&signs).map(|(v, s)| v * s).collect();
            statistic.test_value(&y).map(|t| (t >= observed) as usize)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    report.p_value = Some((1 + exceed) as f64 / (resamples + 1) as f64);
    report.resamples = resamples;
    report.seed = seed;
    Ok(report)
}
