//! Monte Carlo power studies: warp-speed bootstrap for `J_n`/`K_n`,
//! classical two-phase simulation for the KS and sign baselines.

mod config;
mod power;
mod suite;

pub use config::{load_configs, parse_configs, KsCalibration, Orientation, PowerStudyConfig};
pub use power::{classical_power, empirical_quantile, run_power_study, warp_speed_power, PowerReport, PowerRow};
pub use suite::{run_study_suite, write_power_csv, SuiteEntry};
