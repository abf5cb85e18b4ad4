//! Command-line front end. `main` only forwards `std::env::args` here so the
//! whole surface can be driven from tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::distributions::{Alternative, AlternativeFamily, NullDistribution};
use crate::efficiency::{index_table, write_index_csv, IndexRow};
use crate::error::{Error, Result};
use crate::simulation::{load_configs, run_study_suite, write_power_csv, PowerReport};
use crate::spectral::{
    build_discrete_operator, largest_abs_eigenvalue, nu1_curve, sample_limit_null_jn, solve_uniform_eigenvalues,
    CurveOptions, KernelTag,
};
use crate::statistics::{bootstrap_p_value, Statistic};

#[derive(Debug, Parser)]
#[command(name = "symtest", version, about = "Characterization-based tests of symmetry about zero")]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Round numeric output to this many decimals (default: full precision).
    #[arg(long, global = true)]
    pub digits: Option<usize>,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test a data file for symmetry about zero.
    Test(TestArgs),
    /// Leading eigenvalue of the discretized J operator.
    Eigen(EigenArgs),
    /// The threshold curve of the K operators as CSV (t, nu1).
    Curve(CurveArgs),
    /// Local Bahadur indices of Jn and Kn.
    Slope(SlopeArgs),
    /// Run the power studies in a config file.
    Power(PowerArgs),
    /// Draw from the limit law of n*Jn.
    LimitNull(LimitArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct TestArgs {
    /// Newline-separated observations; `#` starts a comment line.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "jn")]
    pub stat: Statistic,
    /// Sign-flip resamples.
    #[arg(long = "B", default_value_t = 2000)]
    #[serde(rename = "B")]
    pub resamples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct EigenArgs {
    #[arg(long)]
    pub dist: NullDistribution,
    #[arg(long, default_value_t = 1000)]
    pub m: usize,
    /// Truncation bound (defaults to the null's).
    #[arg(long = "A")]
    #[serde(rename = "A")]
    pub a: Option<f64>,
    /// Closed-form roots to report for the uniform null.
    #[arg(long, default_value_t = 5)]
    pub k: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct CurveArgs {
    #[arg(long)]
    pub dist: NullDistribution,
    #[arg(long, default_value_t = 200)]
    pub m_coarse: usize,
    #[arg(long, default_value_t = 1000)]
    pub m_fine: usize,
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub t_tol: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct SlopeArgs {
    #[arg(long)]
    pub dist: NullDistribution,
    /// One alternative (g1..g7, g4(3), ...); all tabulated ones if omitted.
    #[arg(long)]
    pub alt: Option<String>,
    #[arg(long)]
    pub beta: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct PowerArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Directory for per-study reports; finished studies are reused.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LimitArgs {
    #[arg(long)]
    pub dist: NullDistribution,
    #[arg(long, default_value_t = 50)]
    pub k: usize,
    #[arg(long, default_value_t = 100_000)]
    pub draws: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write every draw to this file, one per line.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// Reads observations: one decimal per line, blank lines and `#` lines skipped.
pub fn parse_observations(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::Parse {
            line: i + 1,
            message: format!("`{line}` is not a number"),
        })?;
        if !v.is_finite() {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("`{line}` is not finite"),
            });
        }
        out.push(v);
    }
    Ok(out)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn round(v: Value, digits: Option<usize>) -> Value {
    let Some(d) = digits else { return v };
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let p = 10f64.powi(d as i32);
            json!((x * p).round() / p)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(|x| round(x, digits)).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, x)| (k, round(x, digits))).collect()),
        other => other,
    }
}

struct Ctx {
    digits: Option<usize>,
    format: Option<Format>,
    threads: usize,
}

impl Ctx {
    fn json(&self, command: &str, config: Value, result: Value) -> Result<String> {
        let doc = json!({
            "command": command,
            "config": config,
            "result": round(result, self.digits),
        });
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    /// Config echo as `# key=value` lines ahead of a CSV body.
    fn csv_header(&self, command: &str, config: &Value) -> String {
        let mut s = format!("# command={command}\n");
        if let Value::Object(map) = config {
            for (k, v) in map {
                let v = match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(s, "# {k}={v}");
            }
        }
        s
    }

    fn csv_digits(&self) -> usize {
        self.digits.unwrap_or(17)
    }

    fn config(&self, args: &impl Serialize) -> Result<Value> {
        let mut v = serde_json::to_value(args)?;
        if let Value::Object(map) = &mut v {
            map.insert("threads".into(), json!(self.threads));
            map.insert("digits".into(), json!(self.digits));
        }
        Ok(v)
    }
}

/// Parses `args` (program name first) and runs the command, returning what
/// would go to stdout.
pub fn run<I, T>(args: I) -> Result<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            return Ok(e.to_string())
        }
        Err(e) => return Err(Error::InvalidParameter(e.to_string())),
    };
    execute(cli)
}

pub fn execute(cli: Cli) -> Result<String> {
    let ctx = Ctx {
        digits: cli.digits,
        format: cli.format,
        threads: cli.threads,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Test(a) => cmd_test(&ctx, a),
        Command::Eigen(a) => cmd_eigen(&ctx, a),
        Command::Curve(a) => cmd_curve(&ctx, a),
        Command::Slope(a) => cmd_slope(&ctx, a),
        Command::Power(a) => cmd_power(&ctx, a),
        Command::LimitNull(a) => cmd_limit_null(&ctx, a),
    })
}

fn cmd_test(ctx: &Ctx, a: &TestArgs) -> Result<String> {
    let x = parse_observations(&read(&a.input)?).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", a.input.display()),
        },
        e => e,
    })?;
    let report = bootstrap_p_value(&x, a.stat, a.resamples, a.seed)?;
    ctx.json("test", ctx.config(a)?, serde_json::to_value(report)?)
}

fn cmd_eigen(ctx: &Ctx, a: &EigenArgs) -> Result<String> {
    let op = build_discrete_operator(a.dist, KernelTag::J, a.m, a.a)?;
    let nu1 = largest_abs_eigenvalue(&op)?;
    let mut result = json!({
        "dist": a.dist,
        "m": a.m,
        "A": op.a,
        "nu1": nu1,
    });
    if a.dist == NullDistribution::Uniform {
        result["closed_form_roots"] = json!(solve_uniform_eigenvalues(a.k.max(1))?);
    }
    ctx.json("eigen", ctx.config(a)?, result)
}

fn cmd_curve(ctx: &Ctx, a: &CurveArgs) -> Result<String> {
    let opts = CurveOptions {
        m_coarse: a.m_coarse,
        m_fine: a.m_fine,
        grid_size: a.grid,
        t_tol: a.t_tol,
    };
    let curve = nu1_curve(a.dist, &opts)?;
    let config = ctx.config(a)?;
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = ctx.csv_header("curve", &config);
            let d = ctx.csv_digits();
            let _ = writeln!(s, "# argmax_t={:.d$}", curve.argmax_t);
            let _ = writeln!(s, "# sup_value={:.d$}", curve.sup_value);
            let mut buf = Vec::new();
            curve.write_csv(&mut buf, d)?;
            s.push_str(&String::from_utf8(buf).expect("utf8 csv"));
            Ok(s)
        }
        Format::Json => ctx.json("curve", config, serde_json::to_value(&curve)?),
    }
}

fn cmd_slope(ctx: &Ctx, a: &SlopeArgs) -> Result<String> {
    let alts = match &a.alt {
        Some(name) => {
            let alt = Alternative::parse(name, a.beta)?;
            AlternativeFamily::new(alt, a.dist)?;
            Some(vec![alt])
        }
        None => None,
    };
    let rows: Vec<IndexRow> = index_table(&[a.dist], alts.as_deref());
    if let [row] = rows.as_slice() {
        if row.jn.is_none() && row.kn.is_none() {
            return Err(Error::InvalidParameter(row.errors.join("; ")));
        }
    }
    let config = ctx.config(a)?;
    match ctx.format.unwrap_or(Format::Json) {
        Format::Csv => {
            let mut s = ctx.csv_header("slope", &config);
            let mut buf = Vec::new();
            write_index_csv(&rows, &mut buf, ctx.csv_digits())?;
            s.push_str(&String::from_utf8(buf).expect("utf8 csv"));
            Ok(s)
        }
        Format::Json => ctx.json("slope", config, serde_json::to_value(&rows)?),
    }
}

fn cmd_power(ctx: &Ctx, a: &PowerArgs) -> Result<String> {
    let configs = load_configs(&a.config)?;
    let entries = run_study_suite(&configs, ctx.threads, a.out.as_deref())?;
    let mut reports: Vec<&PowerReport> = Vec::new();
    for e in &entries {
        match &e.report {
            Ok(r) => reports.push(r),
            Err(err) => {
                return Err(Error::InvalidParameter(format!(
                    "study {}: {err}",
                    e.config.label.clone().unwrap_or_else(|| e.config.hash())
                )))
            }
        }
    }
    let mut config = ctx.config(a)?;
    config["studies"] = json!(configs.iter().map(|c| c.to_kv()).collect::<Vec<_>>());
    match ctx.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = format!("# command=power\n# config={}\n", a.config.display());
            if let Some(o) = &a.out {
                let _ = writeln!(s, "# out={}", o.display());
            }
            let _ = writeln!(s, "# threads={}", ctx.threads);
            for c in &configs {
                let _ = writeln!(s, "# study {} {}", c.hash(), c.to_kv().trim_end().replace('\n', " "));
            }
            let mut buf = Vec::new();
            write_power_csv(&reports, &mut buf, ctx.csv_digits())?;
            s.push_str(&String::from_utf8(buf).expect("utf8 csv"));
            Ok(s)
        }
        Format::Json => ctx.json("power", config, serde_json::to_value(&reports)?),
    }
}

fn cmd_limit_null(ctx: &Ctx, a: &LimitArgs) -> Result<String> {
    let draws = sample_limit_null_jn(a.dist, a.k, a.draws, a.seed)?;
    if let Some(path) = &a.output {
        let mut s = String::with_capacity(draws.len() * 20);
        for v in &draws {
            let _ = writeln!(s, "{v:?}");
        }
        std::fs::write(path, s).map_err(|e| Error::io(path, e))?;
    }
    let n = draws.len() as f64;
    let mean = draws.iter().sum::<f64>() / n;
    let var = draws.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    let mut sorted = draws.clone();
    sorted.sort_by(|x, y| x.total_cmp(y));
    let q = |p: f64| crate::simulation::empirical_quantile(&sorted, p);
    let result = json!({
        "draws": draws.len(),
        "mean": mean,
        "variance": var,
        "quantiles": {"0.5": q(0.5), "0.9": q(0.9), "0.95": q(0.95), "0.99": q(0.99)},
    });
    ctx.json("limit-null", ctx.config(a)?, result)
}
