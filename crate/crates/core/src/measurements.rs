//! Outcome distributions and Fisher informations of the measurement families:
//! the two-outcome locally optimal POVMs `M_g`, the optimal covariant POVM
//! `M*`, and the general covariant family parameterized by a direction `d`.
//!
//! Densities are per radian; the `1/2pi` normalization lives inside them.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::bloch::{circular_distance, Angle, ProbeConfig, Vec3};
use crate::error::{Error, Result};
use crate::quadrature;

/// Tolerance on `|d.n|` for a general covariant direction.
pub const DIRECTION_TOLERANCE: f64 = 1e-10;

/// Central finite-difference step for Fisher information by quadrature.
pub const FD_STEP: f64 = 1e-5;

/// Absolute tolerance of [`fisher_by_quadrature`].
pub const QUADRATURE_TOLERANCE: f64 = 1e-9;

/// Densities below this are treated as zero inside the Fisher integrand.
pub const DENSITY_FLOOR: f64 = 1e-14;

/// Two-outcome projective measurement aimed at guess `g`.
#[derive(Clone, Copy, Debug)]
pub struct TwoOutcomePovm<'a> {
    pub g: Angle,
    pub probe: &'a ProbeConfig,
}

impl<'a> TwoOutcomePovm<'a> {
    pub fn new(probe: &'a ProbeConfig, g: Angle) -> Self {
        TwoOutcomePovm { g, probe }
    }

    /// Probability of outcome 1, `(1 + sin(theta - g) sqrt(F_Q)) / 2`.
    pub fn prob_one(&self, theta: Angle) -> f64 {
        let s = (theta.value() - self.g.value()).sin();
        (0.5 * (1.0 + s * self.probe.sqrt_fisher())).clamp(0.0, 1.0)
    }

    pub fn prob(&self, theta: Angle, outcome: u8) -> f64 {
        let p1 = self.prob_one(theta);
        if outcome == 0 {
            1.0 - p1
        } else {
            p1
        }
    }

    /// `F_Q cos^2(theta - g) / (1 - F_Q sin^2(theta - g))`.
    pub fn fisher(&self, theta: Angle) -> Result<f64> {
        let fq = self.probe.fisher();
        let delta = theta.value() - self.g.value();
        let off_quadrature = circular_distance(delta, FRAC_PI_2).min(circular_distance(delta, -FRAC_PI_2));
        if (1.0 - fq).abs() <= 1e-12 && off_quadrature <= 1e-9 {
            return Err(Error::SingularFisher);
        }
        let (s, c) = delta.sin_cos();
        Ok((fq * c * c / (1.0 - fq * s * s)).clamp(0.0, fq))
    }
}

pub fn two_outcome_prob(povm: &TwoOutcomePovm<'_>, theta: Angle, x: u8) -> f64 {
    povm.prob(theta, x)
}

pub fn two_outcome_fisher(povm: &TwoOutcomePovm<'_>, theta: Angle) -> Result<f64> {
    povm.fisher(theta)
}

/// Covariant POVM: the optimal `M*` when `direction` is `None`, otherwise the
/// member of the general family `P0 = I + d.sigma` with `d` orthogonal to `n`.
#[derive(Clone, Copy, Debug)]
pub struct CovariantPovm<'a> {
    pub probe: &'a ProbeConfig,
    direction: Option<Vec3>,
}

impl<'a> CovariantPovm<'a> {
    pub fn optimal(probe: &'a ProbeConfig) -> Self {
        CovariantPovm { probe, direction: None }
    }

    pub fn general(probe: &'a ProbeConfig, d: Vec3) -> Result<Self> {
        let along = d.dot(&probe.axis());
        if along.abs() > DIRECTION_TOLERANCE {
            return Err(Error::InvalidDirection(format!("d.n = {along:e} is not orthogonal to the axis")));
        }
        let norm = d.norm();
        if norm > 1.0 + 1e-12 {
            return Err(Error::InvalidDirection(format!("|d| = {norm} exceeds 1")));
        }
        Ok(CovariantPovm { probe, direction: Some(d) })
    }

    pub fn direction(&self) -> Option<Vec3> {
        self.direction
    }

    /// `(cos_coeff, sin_coeff)` such that the density is
    /// `(1 + cos_coeff cos(that - theta) + sin_coeff sin(that - theta)) / 2pi`.
    pub fn coefficients(&self) -> (f64, f64) {
        match self.direction {
            None => (self.probe.sqrt_fisher(), 0.0),
            Some(d) => {
                let a = self.probe.bloch();
                (a.dot(&d), -a.dot(&d.cross(&self.probe.axis())))
            }
        }
    }

    /// Amplitude of the angular modulation; bounds the rejection envelope.
    pub fn coupling(&self) -> f64 {
        let (c, s) = self.coefficients();
        c.hypot(s)
    }

    pub fn density(&self, theta: Angle, that: Angle) -> f64 {
        let (c, s) = self.coefficients();
        let (sd, cd) = (that.value() - theta.value()).sin_cos();
        ((1.0 + c * cd + s * sd) / TAU).max(0.0)
    }
}

/// Density of `M*`, `(1 + sqrt(F_Q) cos(that - theta)) / 2pi`.
pub fn covariant_density(probe: &ProbeConfig, theta: Angle, that: Angle) -> f64 {
    CovariantPovm::optimal(probe).density(theta, that)
}

/// Fisher information of `M*`, `1 - sqrt(1 - F_Q)`.
pub fn covariant_fisher_closed(probe: &ProbeConfig) -> f64 {
    covariant_fisher_from_qfi(probe.fisher())
}

pub(crate) fn covariant_fisher_from_qfi(fq: f64) -> f64 {
    1.0 - (1.0 - fq).max(0.0).sqrt()
}

pub fn general_covariant_density(povm: &CovariantPovm<'_>, theta: Angle, that: Angle) -> Result<f64> {
    if povm.direction.is_none() {
        return Err(Error::InvalidDirection("general family needs a direction d".into()));
    }
    Ok(povm.density(theta, that))
}

/// Classical Fisher information `int (d/dtheta p)^2 / p dthat` of a circular
/// density `p(theta, that)`, differentiated by central differences.
pub fn fisher_by_quadrature<P>(density: P, theta: Angle) -> Result<f64>
where
    P: Fn(f64, f64) -> f64,
{
    let t = theta.value();
    fisher_by_quadrature_with_derivative(&density, |that| (density(t + FD_STEP, that) - density(t - FD_STEP, that)) / (2.0 * FD_STEP), theta)
}

/// As [`fisher_by_quadrature`] with an analytic `d/dtheta p(theta, that)`
/// evaluated at the fixed `theta`.
pub fn fisher_by_quadrature_with_derivative<P, D>(density: P, derivative: D, theta: Angle) -> Result<f64>
where
    P: Fn(f64, f64) -> f64,
    D: Fn(f64) -> f64,
{
    let t = theta.value();
    let integrand = |that: f64| {
        let p = density(t, that);
        if p < DENSITY_FLOOR {
            0.0
        } else {
            let dp = derivative(that);
            dp * dp / p
        }
    };
    let value = quadrature::integrate(integrand, 0.0, TAU, QUADRATURE_TOLERANCE, quadrature::DEFAULT_MAX_SUBDIVISIONS)?;
    Ok(value.max(0.0))
}

/// Circular-density closure `(theta, that) -> p` for a covariant POVM.
pub fn density_fn<'a>(povm: &'a CovariantPovm<'a>) -> impl Fn(f64, f64) -> f64 + 'a {
    move |theta, that| povm.density(Angle::new(theta), Angle::new(that))
}
