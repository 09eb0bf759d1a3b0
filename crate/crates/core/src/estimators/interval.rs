use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::bloch::Angle;
use crate::error::{Error, Result};

const EDGE_SLACK: f64 = 1e-12;

/// Closed arc `[center - half_width, center + half_width]` on the circle.
/// A half-width of `pi` is the whole circle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircularInterval {
    center: Angle,
    half_width: f64,
}

impl CircularInterval {
    pub fn new(center: Angle, half_width: f64) -> Result<Self> {
        if half_width.is_nan() || half_width <= 0.0 {
            return Err(Error::EmptyDomain { half_width });
        }
        Ok(CircularInterval {
            center,
            half_width: half_width.min(PI),
        })
    }

    pub fn full() -> Self {
        CircularInterval {
            center: Angle::new(PI),
            half_width: PI,
        }
    }

    /// The arc from `lo` counter-clockwise to `hi`.
    pub fn from_bounds(lo: f64, hi: f64) -> Result<Self> {
        let span = (hi - lo).rem_euclid(TAU);
        let span = if span == 0.0 && hi != lo { TAU } else { span };
        CircularInterval::new(Angle::new(lo + 0.5 * span), 0.5 * span)
    }

    pub fn center(&self) -> Angle {
        self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn is_full(&self) -> bool {
        self.half_width >= PI
    }

    /// Counter-clockwise start of the arc, not reduced mod 2pi.
    pub fn start(&self) -> f64 {
        self.center.value() - self.half_width
    }

    /// Closed membership; ends computed as `center +- half_width` count as
    /// inside despite rounding.
    pub fn contains(&self, x: Angle) -> bool {
        x.distance(self.center) <= self.half_width + EDGE_SLACK
    }

    pub fn recentered(&self, center: Angle) -> Self {
        CircularInterval { center, ..*self }
    }
}

impl fmt::Display for CircularInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +- {}]", self.center, self.half_width)
    }
}
