//! Estimation runs: covariant only, plain AQSE (optionally on a fixed
//! restricted domain) and the covariant-then-adaptive two-step scheme.

use crate::bloch::{Angle, ProbeConfig};
use crate::error::{Error, Result};
use crate::measurements::{covariant_fisher_closed, TwoOutcomePovm};
use crate::sampling::{sample_covariant, sample_two_outcome, RngStream};

use super::interval::CircularInterval;
use super::likelihood::TrigLikelihood;
use super::trace::{EstimationTrace, Observation, TraceFlags};
use super::{confidence_interval, critical_value, min_sample_size};

/// `n` draws of the optimal covariant POVM followed by the full-circle MLE.
pub fn covariant_run(rng: &mut RngStream, probe: &ProbeConfig, theta_true: Angle, n: usize) -> Result<EstimationTrace> {
    if n == 0 {
        return Err(Error::config("covariant estimation needs at least one probe"));
    }
    let k = probe.sqrt_fisher();
    let mut ll = TrigLikelihood::new();
    let mut outcomes = Vec::with_capacity(n);
    for _ in 0..n {
        let x = sample_covariant(rng, probe, theta_true);
        ll.push_covariant(x, k);
        outcomes.push(Observation::Covariant(x));
    }
    let max = ll.maximize(&CircularInterval::full())?;
    Ok(EstimationTrace {
        outcomes,
        guesses: Vec::new(),
        ci_history: Vec::new(),
        estimate: max.angle,
        flags: TraceFlags::default(),
    })
}

/// Adaptive estimation: each outcome is taken with the POVM aimed at the
/// current MLE over `domain`, starting from `g0`.
pub fn aqse_run(
    rng: &mut RngStream,
    probe: &ProbeConfig,
    theta_true: Angle,
    n: usize,
    g0: Angle,
    domain: &CircularInterval,
) -> Result<EstimationTrace> {
    if n == 0 {
        return Err(Error::config("AQSE needs at least one probe"));
    }
    let k = probe.sqrt_fisher();
    let mut ll = TrigLikelihood::new();
    let mut outcomes = Vec::with_capacity(n);
    let mut guesses = Vec::with_capacity(n);
    let mut guess = g0;
    let mut boundary_hit = false;

    for _ in 0..n {
        let povm = TwoOutcomePovm::new(probe, guess);
        let outcome = sample_two_outcome(rng, &povm, theta_true);
        ll.push_two_outcome(outcome, guess, k);
        outcomes.push(Observation::Adaptive { outcome, guess });
        guesses.push(guess);
        let max = ll.maximize(domain)?;
        guess = max.angle;
        boundary_hit = max.boundary_hit;
    }

    Ok(EstimationTrace {
        outcomes,
        guesses,
        ci_history: Vec::new(),
        estimate: guess,
        flags: TraceFlags {
            bad_ci: false,
            boundary_hit,
        },
    })
}

/// Stage sizes and interval parameters of the two-step scheme for one probe.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoStepPlan {
    /// Critical value `c` for the requested confidence level.
    pub critical: f64,
    /// Fisher information of the covariant stage.
    pub fisher: f64,
    /// Covariant sample size `N1`.
    pub n1: usize,
    /// Target half-width `E`.
    pub half_width: f64,
}

impl TwoStepPlan {
    pub fn new(probe: &ProbeConfig, c_level: f64, half_width: f64) -> Result<Self> {
        let critical = critical_value(c_level)?;
        let fisher = covariant_fisher_closed(probe);
        let n1 = min_sample_size(critical, fisher, half_width)?;
        Ok(TwoStepPlan {
            critical,
            fisher,
            n1,
            half_width,
        })
    }
}

/// Covariant stage of `N1` draws, a confidence interval around its MLE, then
/// `n - N1` adaptive steps maximizing the joint likelihood inside the
/// interval. With `update_centers` the interval follows each new MLE.
pub fn two_step_run(
    rng: &mut RngStream,
    probe: &ProbeConfig,
    theta_true: Angle,
    n: usize,
    c_level: f64,
    half_width: f64,
    update_centers: bool,
) -> Result<EstimationTrace> {
    let plan = TwoStepPlan::new(probe, c_level, half_width)?;
    two_step_with_plan(rng, probe, theta_true, n, &plan, update_centers)
}

pub(crate) fn two_step_with_plan(
    rng: &mut RngStream,
    probe: &ProbeConfig,
    theta_true: Angle,
    n: usize,
    plan: &TwoStepPlan,
    update_centers: bool,
) -> Result<EstimationTrace> {
    let n1 = plan.n1;
    if n < n1 {
        return Err(Error::InsufficientBudget { n, n1 });
    }
    let k = probe.sqrt_fisher();
    let mut ll = TrigLikelihood::new();
    let mut outcomes = Vec::with_capacity(n);

    for _ in 0..n1 {
        let x = sample_covariant(rng, probe, theta_true);
        ll.push_covariant(x, k);
        outcomes.push(Observation::Covariant(x));
    }
    let mut estimate = ll.maximize(&CircularInterval::full())?.angle;
    let stage_one = confidence_interval(estimate, n1, plan.fisher, plan.critical)?;
    let mut ci = CircularInterval::new(estimate, stage_one.half_width().min(plan.half_width))?;

    let mut ci_history = vec![ci];
    let mut guesses = Vec::with_capacity(n - n1);
    let mut boundary_hit = false;
    for _ in n1..n {
        let guess = estimate;
        let povm = TwoOutcomePovm::new(probe, guess);
        let outcome = sample_two_outcome(rng, &povm, theta_true);
        ll.push_two_outcome(outcome, guess, k);
        outcomes.push(Observation::Adaptive { outcome, guess });
        guesses.push(guess);

        let max = ll.maximize(&ci)?;
        estimate = max.angle;
        boundary_hit = max.boundary_hit;
        if update_centers {
            ci = ci.recentered(estimate);
            ci_history.push(ci);
        }
    }

    Ok(EstimationTrace {
        outcomes,
        guesses,
        ci_history,
        estimate,
        flags: TraceFlags {
            bad_ci: !ci.contains(theta_true),
            boundary_hit,
        },
    })
}
