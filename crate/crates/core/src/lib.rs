//! Simulation of single-qubit phase estimation: probe geometry, measurement
//! models, seeded outcome sampling, maximum-likelihood and adaptive
//! estimators, circular error metrics and a bootstrap harness.

pub mod bloch;
pub mod entangled;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod measurements;
pub mod metrics;
pub mod quadrature;
pub mod sampling;

pub use bloch::{Angle, ProbeConfig, Vec3};
pub use error::{Error, Result};
