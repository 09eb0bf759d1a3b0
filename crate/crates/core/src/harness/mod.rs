//! Bootstrap Monte Carlo runner and CSV output.

mod config;
mod output;
mod runner;
mod strategy;

pub use config::{
    parse_domain, parse_f64, parse_list, parse_vec3, ScenarioConfig, DEFAULT_BOOT, DEFAULT_C_LEVEL,
    DEFAULT_HALF_WIDTH, DEFAULT_PROBE_COUNTS, DEFAULT_THETA,
};
pub use output::{
    bad_ci_csv, emit_csv, emit_reference_curves, format_float, reference_curves_csv, results_csv, write_text,
    BAD_CI_HEADER, CURVES_HEADER, RESULTS_HEADER,
};
pub use runner::{
    count_bad_cis, count_bad_cis_with, run_scenario, run_scenario_with, stream_index, BadCiRow, BootstrapResult,
    RunOptions,
};
pub use strategy::{
    normalize_name, Aqse, Covariant, Entangled, RestrictedAqse, RunContext, Strategy, StrategyRegistry, TwoStep,
};
