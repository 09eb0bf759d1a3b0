//! Seedable, splittable randomness and outcome samplers.
//!
//! Every draw goes through an [`RngStream`]. A stream is a ChaCha8 generator
//! keyed by `(seed, stream_id)`; children are derived with [`RngStream::split`],
//! which depends only on the parent's key and the child index, never on how
//! much of the parent has been consumed.

use std::f64::consts::TAU;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloch::{Angle, ProbeConfig};
use crate::error::{Error, Result};
use crate::measurements::{CovariantPovm, TwoOutcomePovm};

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream { seed, stream_id, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Child stream `index`; a pure function of `(seed, stream_id, index)`.
    pub fn split(&self, index: u64) -> RngStream {
        let key = splitmix64(self.seed ^ splitmix64(self.stream_id ^ splitmix64(index.rotate_left(17))));
        RngStream::with_stream(key, index)
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}

pub fn split(master: &RngStream, index: u64) -> RngStream {
    master.split(index)
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

pub fn sample_two_outcome(rng: &mut RngStream, povm: &TwoOutcomePovm<'_>, theta: Angle) -> u8 {
    let p1 = povm.prob_one(theta);
    u8::from(rng.uniform() < p1)
}

/// Draw from `M*` at `theta`.
pub fn sample_covariant(rng: &mut RngStream, probe: &ProbeConfig, theta: Angle) -> Angle {
    sample_trig_density(rng, probe.sqrt_fisher(), 0.0, theta).0
}

pub fn sample_general_covariant(rng: &mut RngStream, povm: &CovariantPovm<'_>, theta: Angle) -> Result<Angle> {
    if povm.direction().is_none() {
        return Err(Error::InvalidDirection("general family needs a direction d".into()));
    }
    let (c, s) = povm.coefficients();
    Ok(sample_trig_density(rng, c, s, theta).0)
}

/// Rejection sampler for `(1 + c cos(x - theta) + s sin(x - theta)) / 2pi`
/// with a uniform proposal. Returns the draw and the number of proposals.
pub(crate) fn sample_trig_density(rng: &mut RngStream, c: f64, s: f64, theta: Angle) -> (Angle, u32) {
    let height = 1.0 + c.hypot(s);
    let mut proposals = 0;
    loop {
        proposals += 1;
        let x = TAU * rng.uniform();
        let u = rng.uniform();
        let (sd, cd) = (x - theta.value()).sin_cos();
        if u * height <= 1.0 + c * cd + s * sd {
            return (Angle::new(x), proposals);
        }
    }
}
