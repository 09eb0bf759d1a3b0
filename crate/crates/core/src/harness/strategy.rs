//! Estimation strategies behind a common trait, looked up by name.

use std::collections::BTreeMap;
use std::fmt;

use crate::bloch::{Angle, ProbeConfig};
use crate::entangled::ent_first_moment;
use crate::error::{Error, Result};
use crate::estimators::{
    aqse_run, covariant_run, two_step_with_plan, CircularInterval, EstimationTrace, TwoStepPlan,
};
use crate::sampling::RngStream;

use super::config::ScenarioConfig;

/// Everything a single repetition needs, resolved once per scenario.
#[derive(Clone, Debug)]
pub struct RunContext {
    pub probe: ProbeConfig,
    pub theta_true: Angle,
    pub g0: Angle,
    pub domain: CircularInterval,
    pub plan: Option<TwoStepPlan>,
}

impl RunContext {
    pub fn new(cfg: &ScenarioConfig, strategy: &dyn Strategy) -> Result<Self> {
        let probe = cfg.probe()?;
        let plan = if strategy.uses_interval() {
            Some(TwoStepPlan::new(&probe, cfg.c_level, cfg.half_width)?)
        } else {
            None
        };
        Ok(RunContext {
            probe,
            theta_true: cfg.theta_true,
            g0: cfg.g0,
            domain: cfg.domain(),
            plan,
        })
    }

    fn plan(&self) -> Result<&TwoStepPlan> {
        self.plan
            .as_ref()
            .ok_or_else(|| Error::config("two-step strategy run without a sample-size plan"))
    }
}

pub trait Strategy: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether runs produce a confidence interval that can be checked.
    fn uses_interval(&self) -> bool {
        false
    }

    /// One simulated estimation with `n` probes.
    fn run(&self, ctx: &RunContext, rng: &mut RngStream, n: usize) -> Result<EstimationTrace>;

    /// Closed-form first moment, for strategies that are not simulated.
    fn analytic_moment(&self, _ctx: &RunContext, _n: usize) -> Option<Result<f64>> {
        None
    }
}

impl fmt::Debug for dyn Strategy + '_ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Strategy({})", self.name())
    }
}

pub struct Covariant;

impl Strategy for Covariant {
    fn name(&self) -> &'static str {
        "covariant"
    }

    fn run(&self, ctx: &RunContext, rng: &mut RngStream, n: usize) -> Result<EstimationTrace> {
        covariant_run(rng, &ctx.probe, ctx.theta_true, n)
    }
}

pub struct Aqse;

impl Strategy for Aqse {
    fn name(&self) -> &'static str {
        "aqse"
    }

    fn run(&self, ctx: &RunContext, rng: &mut RngStream, n: usize) -> Result<EstimationTrace> {
        aqse_run(rng, &ctx.probe, ctx.theta_true, n, ctx.g0, &CircularInterval::full())
    }
}

pub struct RestrictedAqse;

impl Strategy for RestrictedAqse {
    fn name(&self) -> &'static str {
        "restricted_aqse"
    }

    fn run(&self, ctx: &RunContext, rng: &mut RngStream, n: usize) -> Result<EstimationTrace> {
        aqse_run(rng, &ctx.probe, ctx.theta_true, n, ctx.g0, &ctx.domain)
    }
}

pub struct TwoStep {
    pub update_centers: bool,
}

impl Strategy for TwoStep {
    fn name(&self) -> &'static str {
        if self.update_centers {
            "two_step"
        } else {
            "two_step_fixed_center"
        }
    }

    fn uses_interval(&self) -> bool {
        true
    }

    fn run(&self, ctx: &RunContext, rng: &mut RngStream, n: usize) -> Result<EstimationTrace> {
        two_step_with_plan(rng, &ctx.probe, ctx.theta_true, n, ctx.plan()?, self.update_centers)
    }
}

pub struct Entangled;

impl Strategy for Entangled {
    fn name(&self) -> &'static str {
        "entangled"
    }

    fn run(&self, _ctx: &RunContext, _rng: &mut RngStream, _n: usize) -> Result<EstimationTrace> {
        Err(Error::config("the entangled benchmark is analytic and cannot be simulated"))
    }

    fn analytic_moment(&self, ctx: &RunContext, n: usize) -> Option<Result<f64>> {
        Some(ent_first_moment(&ctx.probe, n))
    }
}

/// Lowercase with `-` folded to `_`, so `restricted-aqse` and
/// `restricted_aqse` name the same strategy.
pub fn normalize_name(name: &str) -> String {
    name.trim().to_ascii_lowercase().replace('-', "_")
}

pub struct StrategyRegistry {
    entries: BTreeMap<String, Box<dyn Strategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, strategy: Box<dyn Strategy>) {
        self.entries.insert(normalize_name(strategy.name()), strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Strategy> {
        self.entries
            .get(&normalize_name(name))
            .map(|b| b.as_ref())
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown strategy `{name}` (known: {})",
                    self.names().collect::<Vec<_>>().join(", ")
                ))
            })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut reg = StrategyRegistry::empty();
        reg.register(Box::new(Covariant));
        reg.register(Box::new(Aqse));
        reg.register(Box::new(RestrictedAqse));
        reg.register(Box::new(TwoStep { update_centers: true }));
        reg.register(Box::new(TwoStep { update_centers: false }));
        reg.register(Box::new(Entangled));
        reg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let reg = StrategyRegistry::default();
        assert_eq!(
            reg.names().collect::<Vec<_>>(),
            ["aqse", "covariant", "entangled", "restricted_aqse", "two_step", "two_step_fixed_center"]
        );
        assert_eq!(reg.get("Restricted-AQSE").unwrap().name(), "restricted_aqse");
        assert!(reg.get("two-step-fixed-center").unwrap().uses_interval());
        assert!(reg.get("bayesian").unwrap_err().is_config());
    }

    #[test]
    fn entangled_is_analytic_only() {
        let reg = StrategyRegistry::default();
        let s = reg.get("entangled").unwrap();
        let ctx = RunContext::new(&ScenarioConfig::default(), s).unwrap();
        assert!((s.analytic_moment(&ctx, 1).unwrap().unwrap() - 0.5).abs() < 1e-15);
        assert!(s.run(&ctx, &mut RngStream::new(0), 1).is_err());
        assert!(reg.get("aqse").unwrap().analytic_moment(&ctx, 1).is_none());
    }
}
