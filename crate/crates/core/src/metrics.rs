//! Circular statistics and the error bounds used as reference curves.

use num_complex::Complex64;

use crate::bloch::{Angle, ProbeConfig};
use crate::error::{Error, Result};
use crate::measurements::covariant_fisher_closed;

/// Below this first moment the Holevo variance is reported as undefined.
pub const MIN_MOMENT: f64 = 1e-12;

/// Empirical `E[exp(i x)]`.
pub fn circular_first_moment(samples: &[Angle]) -> Result<Complex64> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let sum: Complex64 = samples.iter().map(|x| Complex64::from_polar(1.0, x.value())).sum();
    Ok(sum / samples.len() as f64)
}

/// `mu^-2 - 1`, where `mu` is `|E[exp(i x)]|`, or `E[cos(x - theta)]` when the
/// true phase is supplied.
pub fn holevo_variance(estimates: &[Angle], theta_true: Option<Angle>) -> Result<f64> {
    Ok(CircularSummary::new(estimates, theta_true)?.holevo_variance)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircularSummary {
    pub moment: Complex64,
    pub mu: f64,
    pub holevo_variance: f64,
    pub count: usize,
    /// Monte Carlo standard error of `mu`.
    pub mu_std_error: f64,
}

impl CircularSummary {
    pub fn new(estimates: &[Angle], theta_true: Option<Angle>) -> Result<Self> {
        let moment = circular_first_moment(estimates)?;
        // mu is the mean of cos(x - reference); its spread gives the standard error
        let reference = match theta_true {
            Some(t) => t.value(),
            None => moment.arg(),
        };
        let n = estimates.len() as f64;
        let proj: Vec<f64> = estimates.iter().map(|x| (x.value() - reference).cos()).collect();
        let mu = match theta_true {
            Some(_) => proj.iter().sum::<f64>() / n,
            None => moment.norm(),
        };
        if mu <= MIN_MOMENT {
            return Err(Error::UndefinedVariance { mu });
        }
        let mean = proj.iter().sum::<f64>() / n;
        let var = if estimates.len() > 1 {
            proj.iter().map(|p| (p - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Ok(CircularSummary {
            moment,
            mu,
            holevo_variance: 1.0 / (mu * mu) - 1.0,
            count: estimates.len(),
            mu_std_error: (var / n).sqrt(),
        })
    }

    /// Delta-method standard error of the Holevo variance, `2 se(mu) / mu^3`.
    pub fn variance_std_error(&self) -> f64 {
        2.0 * self.mu_std_error / self.mu.powi(3)
    }
}

/// `1 / (n F_Q)`.
pub fn qcrb(probe: &ProbeConfig, n: usize) -> f64 {
    1.0 / (n as f64 * probe.fisher())
}

/// `1 / (F_Q n2 + n1 F(M*))`.
pub fn delta1_bound(probe: &ProbeConfig, n1: usize, n2: usize) -> f64 {
    1.0 / (probe.fisher() * n2 as f64 + n1 as f64 * covariant_fisher_closed(probe))
}

/// `delta1_bound + (1 - c_level) E^2`.
pub fn two_step_lower_bound(probe: &ProbeConfig, n1: usize, n2: usize, c_level: f64, half_width: f64) -> f64 {
    delta1_bound(probe, n1, n2) + two_step_floor(c_level, half_width)
}

/// Limit of the two-step bound as the adaptive stage grows.
pub fn two_step_floor(c_level: f64, half_width: f64) -> f64 {
    (1.0 - c_level) * half_width * half_width
}

/// Probability that all `n` covariant outcomes fall within `eps` of the
/// antipode of the true phase: `((eps - sqrt(F_Q) sin eps) / pi)^n`.
pub fn bad_ci_type1_prob(probe: &ProbeConfig, n: usize, eps: f64) -> f64 {
    bad_ci_type1_prob_fq(probe.fisher(), n, eps)
}

/// As [`bad_ci_type1_prob`] but parameterized directly by `F_Q`, which may be 0.
pub fn bad_ci_type1_prob_fq(fq: f64, n: usize, eps: f64) -> f64 {
    let window = (eps - fq.max(0.0).sqrt() * eps.sin()) / std::f64::consts::PI;
    if window <= 0.0 {
        return 0.0;
    }
    (n as f64 * window.ln()).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn probe(axial: f64) -> ProbeConfig {
        ProbeConfig::pure_with_axial(axial).unwrap()
    }

    #[test]
    fn moment_examples() {
        let m = circular_first_moment(&[Angle::new(2.0); 5]).unwrap();
        assert!((m - Complex64::from_polar(1.0, 2.0)).norm() < 1e-15);
        let m = circular_first_moment(&[Angle::ZERO, Angle::new(PI)]).unwrap();
        assert!(m.norm() < 1e-15);
        assert!(matches!(circular_first_moment(&[]), Err(Error::EmptySample)));
    }

    #[test]
    fn variance_examples() {
        let t = Angle::new(1.3);
        assert_eq!(holevo_variance(&[t; 4], Some(t)).unwrap(), 0.0);
        // cos(x - 0) averages to 1/2
        let xs = [Angle::new(PI / 3.0), Angle::new(-PI / 3.0)];
        assert!((holevo_variance(&xs, Some(Angle::ZERO)).unwrap() - 3.0).abs() < 1e-12);
        assert!((holevo_variance(&xs, None).unwrap() - 3.0).abs() < 1e-12);
        let uniform: Vec<Angle> = (0..8).map(|k| Angle::new(k as f64 * PI / 4.0)).collect();
        assert!(matches!(holevo_variance(&uniform, None), Err(Error::UndefinedVariance { .. })));
    }

    #[test]
    fn biased_form_never_exceeds_moment() {
        let xs: Vec<Angle> = [0.1, -0.2, 0.25, 0.05].iter().map(|&x| Angle::new(x)).collect();
        let biased = holevo_variance(&xs, Some(Angle::ZERO)).unwrap();
        let unbiased = holevo_variance(&xs, None).unwrap();
        assert!(biased >= unbiased - 1e-15);
    }

    #[test]
    fn bound_examples() {
        assert_eq!(qcrb(&probe(0.0), 1), 1.0);
        assert!((qcrb(&probe(0.5), 128) - 1.0 / 96.0).abs() < 1e-15);
        assert_eq!(qcrb(&probe(0.0), 128), 0.0078125);

        assert!((delta1_bound(&probe(0.0), 11, 117) - 1.0 / 128.0).abs() < 1e-15);
        assert!((delta1_bound(&probe(0.5), 22, 106) - 1.0 / 90.5).abs() < 1e-14);
        assert!((delta1_bound(&probe(0.5), 22, 0) - 1.0 / 11.0).abs() < 1e-14);

        let p = probe(0.0);
        assert_eq!(two_step_lower_bound(&p, 11, 117, 1.0, FRAC_PI_4), delta1_bound(&p, 11, 117));
        assert!((two_step_floor(0.99, FRAC_PI_4) - 0.006_168_502_750_680_849).abs() < 1e-15);
        assert!((two_step_lower_bound(&p, 11, 117, 0.99, FRAC_PI_4) - 0.013_981_002_750_680_85).abs() < 1e-15);
    }

    #[test]
    fn bad_ci_examples() {
        // log-space oracle values
        let p = bad_ci_type1_prob(&probe(0.0), 11, FRAC_PI_4);
        assert!((p / 2.302_528_240_648_602e-18 - 1.0).abs() < 1e-12);
        let p = bad_ci_type1_prob(&probe(0.5), 22, FRAC_PI_4);
        assert!((p / 2.000_496_788_735_815e-28 - 1.0).abs() < 1e-12);
        assert_eq!(bad_ci_type1_prob(&probe(0.0), 3, 0.0), 0.0);
        assert!((bad_ci_type1_prob_fq(0.0, 1, FRAC_PI_4) - 0.25).abs() < 1e-15);
    }
}
