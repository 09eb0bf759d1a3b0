use std::time::Instant;

use rayon::prelude::*;

use crate::bloch::Angle;
use crate::error::{Error, Result};
use crate::estimators::TwoStepPlan;
use crate::metrics::CircularSummary;
use crate::sampling::RngStream;

use super::config::ScenarioConfig;
use super::strategy::{RunContext, Strategy, StrategyRegistry};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `None` lets rayon pick.
    pub workers: Option<usize>,
    /// Record wall-clock time per result. Off by default so output files are
    /// byte-for-byte reproducible.
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BootstrapResult {
    pub n_probes: usize,
    pub strategy: String,
    pub holevo_variance: f64,
    pub mu: f64,
    /// Repetitions whose final interval misses the true phase, or -1 for
    /// strategies without one.
    pub bad_ci_count: i64,
    pub reps: usize,
    pub seed: u64,
    pub wall_seconds: f64,
    /// Monte Carlo standard error of `holevo_variance`; 0 for analytic rows.
    pub std_error: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BadCiRow {
    pub steps: usize,
    pub n_probes: usize,
    pub count: usize,
    pub reps: usize,
}

/// Stream index of repetition `rep` at `n` probes.
pub fn stream_index(n: usize, rep: usize) -> u64 {
    ((n as u64) << 32) | rep as u64
}

fn check_ranges(cfg: &ScenarioConfig) -> Result<()> {
    let limit = 1usize << 32;
    if cfg.probe_counts.iter().any(|&n| n >= limit) || cfg.n_boot > limit {
        return Err(Error::config("probe counts and n_boot must stay below 2^32"));
    }
    Ok(())
}

fn pool(opts: &RunOptions) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = opts.workers {
        if w == 0 {
            return Err(Error::config("workers must be positive"));
        }
        builder = builder.num_threads(w);
    }
    builder
        .build()
        .map_err(|e| Error::config(format!("cannot start worker pool: {e}")))
}

/// Runs `n_boot` repetitions at `n` probes and returns final estimates and
/// bad-interval flags in repetition order.
fn repetitions(
    strategy: &dyn Strategy,
    ctx: &RunContext,
    master: &RngStream,
    n: usize,
    n_boot: usize,
) -> Result<Vec<(Angle, bool)>> {
    let outcomes: Vec<Result<(Angle, bool)>> = (0..n_boot)
        .into_par_iter()
        .map(|rep| {
            let mut rng = master.split(stream_index(n, rep));
            strategy
                .run(ctx, &mut rng, n)
                .map(|t| (t.estimate, t.flags.bad_ci))
                .map_err(|e| Error::Repetition {
                    n,
                    rep,
                    seed: master.seed(),
                    source: Box::new(e),
                })
        })
        .collect();
    outcomes.into_iter().collect()
}

fn check_budget(ctx: &RunContext, counts: &[usize]) -> Result<()> {
    if let (Some(plan), Some(&n)) = (ctx.plan, counts.first()) {
        if n < plan.n1 {
            return Err(Error::InsufficientBudget { n, n1: plan.n1 });
        }
    }
    Ok(())
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Vec<BootstrapResult>> {
    run_scenario_with(cfg, &StrategyRegistry::default(), &RunOptions::default())
}

pub fn run_scenario_with(
    cfg: &ScenarioConfig,
    registry: &StrategyRegistry,
    opts: &RunOptions,
) -> Result<Vec<BootstrapResult>> {
    cfg.validate()?;
    check_ranges(cfg)?;
    let strategy = registry.get(&cfg.strategy)?;
    let ctx = RunContext::new(cfg, strategy)?;
    check_budget(&ctx, &cfg.probe_counts)?;
    let master = RngStream::new(cfg.master_seed);
    let pool = pool(opts)?;

    let mut results = Vec::with_capacity(cfg.probe_counts.len());
    for &n in &cfg.probe_counts {
        let start = Instant::now();
        let mut row = if let Some(moment) = strategy.analytic_moment(&ctx, n) {
            let mu = moment?;
            BootstrapResult {
                n_probes: n,
                strategy: strategy.name().to_string(),
                holevo_variance: 1.0 / (mu * mu) - 1.0,
                mu,
                bad_ci_count: -1,
                reps: 0,
                seed: cfg.master_seed,
                wall_seconds: 0.0,
                std_error: 0.0,
            }
        } else {
            let runs = pool.install(|| repetitions(strategy, &ctx, &master, n, cfg.n_boot))?;
            let estimates: Vec<Angle> = runs.iter().map(|r| r.0).collect();
            let summary = CircularSummary::new(&estimates, Some(cfg.theta_true))?;
            let bad_ci_count = if strategy.uses_interval() {
                runs.iter().filter(|r| r.1).count() as i64
            } else {
                -1
            };
            BootstrapResult {
                n_probes: n,
                strategy: strategy.name().to_string(),
                holevo_variance: summary.holevo_variance,
                mu: summary.mu,
                bad_ci_count,
                reps: cfg.n_boot,
                seed: cfg.master_seed,
                wall_seconds: 0.0,
                std_error: summary.variance_std_error(),
            }
        };
        if opts.timing {
            row.wall_seconds = start.elapsed().as_secs_f64();
        }
        results.push(row);
    }
    Ok(results)
}

/// For each adaptive step count `s`, runs `n_boot` two-step repetitions with
/// `N1 + s` probes and counts final intervals that miss the true phase.
pub fn count_bad_cis(cfg: &ScenarioConfig, aqse_steps: &[usize]) -> Result<Vec<BadCiRow>> {
    count_bad_cis_with(cfg, aqse_steps, &StrategyRegistry::default(), &RunOptions::default())
}

pub fn count_bad_cis_with(
    cfg: &ScenarioConfig,
    aqse_steps: &[usize],
    registry: &StrategyRegistry,
    opts: &RunOptions,
) -> Result<Vec<BadCiRow>> {
    cfg.validate()?;
    check_ranges(cfg)?;
    let strategy = registry.get(&cfg.strategy)?;
    if !strategy.uses_interval() {
        return Err(Error::config(format!(
            "bad-interval counts need a two-step strategy, not {}",
            strategy.name()
        )));
    }
    let ctx = RunContext::new(cfg, strategy)?;
    let plan: TwoStepPlan = ctx.plan.expect("interval strategies carry a plan");
    let master = RngStream::new(cfg.master_seed);
    let pool = pool(opts)?;

    aqse_steps
        .iter()
        .map(|&steps| {
            let n = plan.n1 + steps;
            let runs = pool.install(|| repetitions(strategy, &ctx, &master, n, cfg.n_boot))?;
            Ok(BadCiRow {
                steps,
                n_probes: n,
                count: runs.iter().filter(|r| r.1).count(),
                reps: cfg.n_boot,
            })
        })
        .collect()
}
