use std::io::Write;
use std::path::{Path, PathBuf};

use super::config::PowerStudyConfig;
use super::power::{run_power_study, PowerReport};
use crate::error::{Error, Result};

/// Outcome of one study in a suite.
#[derive(Debug)]
pub struct SuiteEntry {
    pub config: PowerStudyConfig,
    pub report: Result<PowerReport>,
    /// True when the report was read back from an earlier run.
    pub resumed: bool,
}

fn report_path(dir: &Path, cfg: &PowerStudyConfig) -> PathBuf {
    dir.join(format!("study-{}.json", cfg.hash()))
}

fn load_cached(path: &Path, cfg: &PowerStudyConfig) -> Option<PowerReport> {
    let text = std::fs::read_to_string(path).ok()?;
    let report: PowerReport = serde_json::from_str(&text).ok()?;
    (report.config == *cfg).then_some(report)
}

fn store(path: &Path, report: &PowerReport) -> Result<()> {
    let tmp = path.with_extension("json.partial");
    let text = serde_json::to_string_pretty(report)?;
    std::fs::write(&tmp, text).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Runs studies one after another on a pool of `parallelism` threads
/// (0 = rayon's default).
///
/// With an output directory every finished report is written to
/// `study-<hash>.json` straight away, and studies whose file already holds
/// a report for the identical config are loaded instead of rerun. Failures,
/// including I/O errors, are reported per study.
pub fn run_study_suite(configs: &[PowerStudyConfig], parallelism: usize, out_dir: Option<&Path>) -> Result<Vec<SuiteEntry>> {
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let mut out = Vec::with_capacity(configs.len());
    for cfg in configs {
        let path = out_dir.map(|d| report_path(d, cfg));
        if let Some(report) = path.as_deref().and_then(|p| load_cached(p, cfg)) {
            out.push(SuiteEntry {
                config: cfg.clone(),
                report: Ok(report),
                resumed: true,
            });
            continue;
        }
        let report = pool.install(|| run_power_study(cfg));
        let report = match (report, &path) {
            (Ok(r), Some(p)) => store(p, &r).map(|_| r),
            (r, _) => r,
        };
        out.push(SuiteEntry {
            config: cfg.clone(),
            report,
            resumed: false,
        });
    }
    Ok(out)
}

/// Power table with columns `null,alt,theta,n,statistic,power`.
pub fn write_power_csv<W: Write>(reports: &[&PowerReport], out: W, digits: usize) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["null", "alt", "theta", "n", "statistic", "power"])?;
    for rep in reports {
        for r in &rep.rows {
            w.write_record([
                rep.config.null_dist.name().to_string(),
                rep.config.alternative.label(),
                format!("{:?}", r.theta),
                rep.config.n.to_string(),
                r.statistic.name().to_string(),
                format!("{:.digits$}", r.power),
            ])?;
        }
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}
