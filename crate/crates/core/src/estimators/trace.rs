use crate::bloch::Angle;

use super::interval::CircularInterval;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Observation {
    /// Outcome of the optimal covariant POVM.
    Covariant(Angle),
    /// Outcome of the two-outcome POVM aimed at `guess`.
    Adaptive { outcome: u8, guess: Angle },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TraceFlags {
    /// The final confidence interval excludes the true phase.
    pub bad_ci: bool,
    /// The last maximization landed on a closed end of its domain.
    pub boundary_hit: bool,
}

/// Record of one estimation run.
#[derive(Clone, Debug, PartialEq)]
pub struct EstimationTrace {
    pub outcomes: Vec<Observation>,
    /// Guess used for each adaptive outcome, in order.
    pub guesses: Vec<Angle>,
    /// Confidence intervals in force after each update; empty for schemes
    /// that never build one.
    pub ci_history: Vec<CircularInterval>,
    pub estimate: Angle,
    pub flags: TraceFlags,
}

impl EstimationTrace {
    pub fn final_ci(&self) -> Option<&CircularInterval> {
        self.ci_history.last()
    }

    pub fn adaptive_steps(&self) -> usize {
        self.guesses.len()
    }
}
