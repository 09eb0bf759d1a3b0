use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qphase::harness::{
    bad_ci_csv, count_bad_cis_with, reference_curves_csv, results_csv, run_scenario_with, write_text, RunOptions,
    ScenarioConfig, StrategyRegistry,
};
use qphase::Error;

const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;
const EXIT_IO: u8 = 4;

/// Phase-estimation bootstrap simulations. Results are written as CSV.
///
/// Exit codes: 0 success, 2 configuration error, 3 simulation error, 4 I/O error.
#[derive(Parser, Debug)]
#[command(name = "qphase", version)]
struct Cli {
    /// Flat `key = value` scenario file; flags given on the command line override it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Worker threads for repetitions [default: all cores]
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    /// Record wall-clock seconds in the output (otherwise written as 0 so runs are byte-reproducible)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Holevo variance of a single-stage strategy against the number of probes
    Hvar {
        /// covariant, aqse, restricted-aqse (any registered strategy is accepted) [default: covariant]
        #[arg(long)]
        strategy: Option<String>,
        /// Restricted parameter space `lo,hi`, counter-clockwise [default: theta -+ pi/2]
        #[arg(long, allow_hyphen_values = true)]
        domain: Option<String>,
        /// Initial guess of the adaptive schemes [default: 0]
        #[arg(long, allow_hyphen_values = true)]
        g0: Option<String>,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Holevo variance of the two-step scheme (covariant stage, then adaptive steps inside the interval)
    EciHvar {
        #[command(flatten)]
        ci: IntervalArgs,
        /// Keep the interval centred on the stage-one estimate
        #[arg(long)]
        fixed_center: bool,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Analytic Holevo variance of the optimal entangled measurement
    EntHvar {
        #[command(flatten)]
        probe: ProbeArgs,
        /// Comma-separated probe counts [default: 1,2,4,8,16,32,64,128]
        #[arg(long)]
        probes: Option<String>,
        /// Output CSV [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count final intervals that miss the true phase after a number of adaptive steps
    BadCi {
        /// Comma-separated adaptive step counts [default: 0,8,16,24,32,40,48]
        #[arg(long)]
        steps: Option<String>,
        #[command(flatten)]
        ci: IntervalArgs,
        /// Keep the interval centred on the stage-one estimate
        #[arg(long)]
        fixed_center: bool,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Reference curves: QCRB, two-step bounds and the covariant-only bound
    Bounds {
        #[command(flatten)]
        probe: ProbeArgs,
        /// Comma-separated probe counts [default: 1,2,4,8,16,32,64,128]
        #[arg(long)]
        probes: Option<String>,
        #[command(flatten)]
        ci: IntervalArgs,
        /// Output CSV [default: stdout]
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ProbeArgs {
    /// Bloch vector `x,y,z` [default: 1,0,0]
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Rotation axis `x,y,z` [default: 0,0,1]
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
}

#[derive(Args, Debug)]
struct IntervalArgs {
    /// Confidence level of the stage-one interval [default: 0.99]
    #[arg(long)]
    clevel: Option<String>,
    /// Target interval half-width E in radians [default: 0.7853981633974483]
    #[arg(long)]
    margin: Option<String>,
}

#[derive(Args, Debug)]
struct SimArgs {
    /// True phase in radians [default: 3.141592653589793]
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[command(flatten)]
    probe: ProbeArgs,
    /// Comma-separated probe counts [default: 1,2,4,8,16,32,64,128]
    #[arg(long)]
    probes: Option<String>,
    /// Bootstrap repetitions per probe count [default: 10000]
    #[arg(long)]
    boot: Option<String>,
    /// Master seed [default: 0]
    #[arg(long)]
    seed: Option<String>,
    /// Output CSV [default: stdout]
    #[arg(long)]
    out: Option<PathBuf>,
}

const DEFAULT_STEPS: &str = "0,8,16,24,32,40,48";

fn set(cfg: &mut ScenarioConfig, key: &str, value: &Option<String>) -> qphase::Result<()> {
    match value {
        Some(v) => cfg.set(key, v).map_err(|e| Error::InvalidConfig(format!("--{key}: {e}"))),
        None => Ok(()),
    }
}

fn apply_probe(cfg: &mut ScenarioConfig, p: &ProbeArgs) -> qphase::Result<()> {
    set(cfg, "a", &p.a)?;
    set(cfg, "n", &p.n)
}

fn apply_interval(cfg: &mut ScenarioConfig, ci: &IntervalArgs) -> qphase::Result<()> {
    set(cfg, "c_level", &ci.clevel)?;
    set(cfg, "half_width_E", &ci.margin)
}

fn apply_sim(cfg: &mut ScenarioConfig, s: &SimArgs) -> qphase::Result<()> {
    set(cfg, "theta_true", &s.theta)?;
    apply_probe(cfg, &s.probe)?;
    set(cfg, "probe_counts", &s.probes)?;
    set(cfg, "n_boot", &s.boot)?;
    set(cfg, "master_seed", &s.seed)
}

fn emit(out: &Option<PathBuf>, text: &str) -> qphase::Result<()> {
    match out {
        Some(path) => write_text(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn two_step_name(fixed_center: bool) -> &'static str {
    if fixed_center {
        "two_step_fixed_center"
    } else {
        "two_step"
    }
}

fn run(cli: Cli) -> qphase::Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => ScenarioConfig::from_file(path)?,
        None => ScenarioConfig::default(),
    };
    let opts = RunOptions {
        workers: cli.workers,
        timing: cli.timing,
    };
    let registry = StrategyRegistry::default();

    match &cli.command {
        Command::Hvar {
            strategy,
            domain,
            g0,
            sim,
        } => {
            set(&mut cfg, "strategy", strategy)?;
            set(&mut cfg, "restricted_domain", domain)?;
            set(&mut cfg, "g0", g0)?;
            apply_sim(&mut cfg, sim)?;
            let rows = run_scenario_with(&cfg, &registry, &opts)?;
            emit(&sim.out, &results_csv(&rows))
        }
        Command::EciHvar { ci, fixed_center, sim } => {
            cfg.strategy = two_step_name(*fixed_center).into();
            apply_interval(&mut cfg, ci)?;
            apply_sim(&mut cfg, sim)?;
            let rows = run_scenario_with(&cfg, &registry, &opts)?;
            emit(&sim.out, &results_csv(&rows))
        }
        Command::EntHvar { probe, probes, out } => {
            cfg.strategy = "entangled".into();
            apply_probe(&mut cfg, probe)?;
            set(&mut cfg, "probe_counts", probes)?;
            let rows = run_scenario_with(&cfg, &registry, &opts)?;
            emit(out, &results_csv(&rows))
        }
        Command::BadCi {
            steps,
            ci,
            fixed_center,
            sim,
        } => {
            cfg.strategy = two_step_name(*fixed_center).into();
            apply_interval(&mut cfg, ci)?;
            apply_sim(&mut cfg, sim)?;
            let steps = qphase::harness::parse_list(steps.as_deref().unwrap_or(DEFAULT_STEPS))
                .map_err(|e| Error::InvalidConfig(format!("--steps: {e}")))?;
            let rows = count_bad_cis_with(&cfg, &steps, &registry, &opts)?;
            emit(&sim.out, &bad_ci_csv(&rows))
        }
        Command::Bounds { probe, probes, ci, out } => {
            apply_probe(&mut cfg, probe)?;
            set(&mut cfg, "probe_counts", probes)?;
            apply_interval(&mut cfg, ci)?;
            cfg.validate()?;
            emit(out, &reference_curves_csv(&cfg)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_io() {
                EXIT_IO
            } else if e.is_config() {
                EXIT_CONFIG
            } else {
                EXIT_RUNTIME
            })
        }
    }
}
