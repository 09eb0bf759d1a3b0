//! Estimation procedures: closed-form and numeric MLEs, adaptive schemes and
//! confidence intervals.

mod adaptive;
mod interval;
mod likelihood;
mod trace;

use std::f64::consts::{FRAC_PI_2, PI};

use statrs::distribution::{ContinuousCDF, Normal};

use crate::bloch::Angle;
use crate::error::{Error, Result};

pub use adaptive::{aqse_run, covariant_run, two_step_run, TwoStepPlan};
pub(crate) use adaptive::two_step_with_plan;
pub use interval::CircularInterval;
pub use likelihood::{
    count_local_maxima, mle_circular, scan_angle, Maximum, TrigLikelihood, REFINE_TOLERANCE, SCAN_POINTS,
    TIE_TOLERANCE,
};
pub use trace::{EstimationTrace, Observation, TraceFlags};

/// Smallest half-width a confidence interval is allowed to shrink to.
pub const MIN_HALF_WIDTH: f64 = 1e-6;

/// Both roots of `sin(theta - g) = (1 - 2m/N) / sqrt(F_Q)`, the maximizers of
/// the two-outcome likelihood with `m` zeros out of `n`.
pub fn mle_two_outcome(zeros: usize, n: usize, g: Angle, fq: f64) -> Result<[Angle; 2]> {
    if n == 0 || zeros > n {
        return Err(Error::config(format!("need 0 <= m <= N and N >= 1, got m = {zeros}, N = {n}")));
    }
    if !(fq > 0.0 && fq <= 1.0) {
        return Err(Error::config(format!("F_Q must lie in (0, 1], got {fq}")));
    }
    let s = ((1.0 - 2.0 * zeros as f64 / n as f64) / fq.sqrt()).clamp(-1.0, 1.0);
    let r = s.asin();
    Ok([g + r, g + (PI - r)])
}

/// Two-sided standard-normal critical value for confidence `level`.
/// The conventional 1.96 and 2.58 are used for 95% and 99%.
pub fn critical_value(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::config(format!("confidence level must lie in (0, 1), got {level}")));
    }
    if (level - 0.95).abs() < 1e-12 {
        return Ok(1.96);
    }
    if (level - 0.99).abs() < 1e-12 {
        return Ok(2.58);
    }
    let normal = Normal::standard();
    Ok(normal.inverse_cdf(0.5 + 0.5 * level))
}

/// `center = estimate`, half-width `c / sqrt(n1 F)` capped at pi.
pub fn confidence_interval(estimate: Angle, n1: usize, fisher: f64, c: f64) -> Result<CircularInterval> {
    if n1 == 0 || !(fisher > 0.0) || !(c > 0.0) {
        return Err(Error::config(format!(
            "confidence interval needs n1 >= 1, F > 0, c > 0 (got {n1}, {fisher}, {c})"
        )));
    }
    let half_width = (c / (n1 as f64 * fisher).sqrt()).clamp(MIN_HALF_WIDTH, PI);
    CircularInterval::new(estimate, half_width)
}

/// Smallest covariant sample giving a CI half-width of at most `half_width`:
/// `ceil(c^2 / (F E^2))`.
pub fn min_sample_size(c: f64, fisher: f64, half_width: f64) -> Result<usize> {
    if !(c > 0.0 && fisher > 0.0 && half_width > 0.0) || !c.is_finite() {
        return Err(Error::config(format!(
            "sample size needs positive finite c, F and E (got {c}, {fisher}, {half_width})"
        )));
    }
    Ok((c * c / (fisher * half_width * half_width)).ceil().max(1.0) as usize)
}

/// Restricted parameter space of half-width pi/2 centred on `theta`.
pub fn default_restricted_domain(theta: Angle) -> CircularInterval {
    CircularInterval::new(theta, FRAC_PI_2).expect("positive half-width")
}
