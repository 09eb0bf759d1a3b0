//! Bloch-sphere geometry of the probe qubit.
//!
//! The probe is `rho = (I + a.sigma) / 2` and the phase acts as a rotation of
//! the Bloch vector `a` by `theta` about the unit axis `n`.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use nalgebra::Vector3;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Tolerance on unit-norm checks for user supplied vectors.
pub const NORM_TOLERANCE: f64 = 1e-9;

/// Smallest admissible quantum Fisher information.
pub const MIN_FISHER: f64 = 1e-12;

/// A phase in `[0, 2pi)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(radians: f64) -> Self {
        let r = radians.rem_euclid(TAU);
        // rem_euclid rounds tiny negative inputs up to exactly 2pi
        if r >= TAU {
            Angle(0.0)
        } else {
            Angle(r)
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// Shortest arc length to `other`, in `[0, pi]`.
    pub fn distance(self, other: Angle) -> f64 {
        circular_distance(self.0, other.0)
    }

    /// Signed offset `self - other` reduced to `(-pi, pi]`.
    pub fn signed_offset(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).rem_euclid(TAU);
        if d > PI {
            d - TAU
        } else {
            d
        }
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Self {
        Angle::new(radians)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::new(self.0 + rhs.0)
    }
}

impl Add<f64> for Angle {
    type Output = Angle;
    fn add(self, rhs: f64) -> Angle {
        Angle::new(self.0 + rhs)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::new(self.0 - rhs.0)
    }
}

impl Sub<f64> for Angle {
    type Output = Angle;
    fn sub(self, rhs: f64) -> Angle {
        Angle::new(self.0 - rhs)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::new(-self.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `min(|x - y|, 2pi - |x - y|)` after reducing both arguments mod 2pi.
pub fn circular_distance(x: f64, y: f64) -> f64 {
    let d = (x - y).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Validated probe state together with the rotation axis of the phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeConfig {
    a: Vec3,
    n: Vec3,
    fq: f64,
}

impl ProbeConfig {
    /// Validate `(a, n)`.
    ///
    /// `n` within [`NORM_TOLERANCE`] of unit length is renormalized, and `a`
    /// up to that much outside the Bloch ball is pulled back onto the sphere.
    pub fn new(a: Vec3, n: Vec3) -> Result<Self> {
        if !a.iter().chain(n.iter()).all(|x| x.is_finite()) {
            return Err(Error::InvalidVector("non-finite component".into()));
        }
        let n_norm = n.norm();
        if (n_norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidVector(format!(
                "rotation axis must be a unit vector, |n| = {n_norm}"
            )));
        }
        let n = n / n_norm;

        let a_norm = a.norm();
        if a_norm > 1.0 + NORM_TOLERANCE {
            return Err(Error::InvalidVector(format!(
                "Bloch vector outside the unit ball, |a| = {a_norm}"
            )));
        }
        let a = if a_norm > 1.0 { a / a_norm } else { a };

        let axial = a.dot(&n);
        let fq = a.norm_squared() - axial * axial;
        if fq <= MIN_FISHER {
            return Err(Error::DegenerateProbe { fq });
        }
        Ok(ProbeConfig { a, n, fq: fq.min(1.0) })
    }

    /// Pure probe in the x-z plane with `a.n = axial`, rotated about z.
    pub fn pure_with_axial(axial: f64) -> Result<Self> {
        let perp = (1.0 - axial * axial).max(0.0).sqrt();
        ProbeConfig::new(Vec3::new(perp, 0.0, axial), Vec3::z())
    }

    pub fn bloch(&self) -> Vec3 {
        self.a
    }

    pub fn axis(&self) -> Vec3 {
        self.n
    }

    /// `a.n`, the component of the Bloch vector along the rotation axis.
    pub fn axial(&self) -> f64 {
        self.a.dot(&self.n)
    }

    pub fn fisher(&self) -> f64 {
        self.fq
    }

    pub fn sqrt_fisher(&self) -> f64 {
        self.fq.sqrt()
    }

    /// Bloch vector of the rotated state `U_theta rho U_theta^dagger`.
    pub fn rotate(&self, theta: Angle) -> Vec3 {
        rotate_bloch(self, theta)
    }
}

pub fn make_probe(a: Vec3, n: Vec3) -> Result<ProbeConfig> {
    ProbeConfig::new(a, n)
}

/// `a(theta) = cos(theta) a + sin(theta) (n x a) + 2 (n.a) sin^2(theta/2) n`.
pub fn rotate_bloch(probe: &ProbeConfig, theta: Angle) -> Vec3 {
    let (a, n) = (probe.a, probe.n);
    let t = theta.value();
    let half = (0.5 * t).sin();
    a * t.cos() + n.cross(&a) * t.sin() + n * (2.0 * n.dot(&a) * half * half)
}

pub fn quantum_fisher_information(probe: &ProbeConfig) -> f64 {
    probe.fq
}
