//! A small power study: warp-speed bootstrap for J_n and K_n, classical
//! Monte Carlo for the KS and sign baselines.

use symtest::distributions::{Alternative, NullDistribution};
use symtest::simulation::{parse_configs, run_study_suite, write_power_csv, PowerReport};

const STUDIES: &str = "
[normal-shift]
null=normal
alt=g5
thetas=0,0.25,0.5,0.75
n=20
N=2000
seed=1

[cauchy-skew]
null=cauchy
alt=g7
thetas=0,0.5,1
n=20
N=2000
stats=jn,kn
seed=2
";

fn main() -> symtest::Result<()> {
    let configs = parse_configs(STUDIES)?;
    let entries = run_study_suite(&configs, 0, None)?;
    let reports: Vec<&PowerReport> = entries.iter().filter_map(|e| e.report.as_ref().ok()).collect();
    write_power_csv(&reports, std::io::stdout().lock(), 3)?;
    for e in &entries {
        if let Ok(r) = &e.report {
            eprintln!("{} {}: {:.1}s", e.config.label.as_deref().unwrap_or("-"), e.config.hash(), r.wall_time_secs);
        }
    }
    // the same study built in code
    let mut cfg = symtest::simulation::PowerStudyConfig::new(NullDistribution::Laplace, Alternative::G6 { beta: 1.0 }, vec![0.1, 0.25], 50, 1000);
    cfg.seed = 3;
    let rep = symtest::simulation::run_power_study(&cfg)?;
    for row in &rep.rows {
        eprintln!("laplace g6(1) theta {} {:?}: {:.3} ± {:.3}", row.theta, row.statistic, row.power, row.std_error);
    }
    Ok(())
}
