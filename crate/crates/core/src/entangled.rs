//! Analytic Holevo variance of the optimal covariant measurement on `N`
//! probe copies measured jointly.
//!
//! `J = sum_i n.sigma_i / 2` has eigenvalues `N/2 - k`, and a pure product
//! probe puts weight `q_k = C(N, k) alpha^(N-k) beta^k` on eigenvalue
//! `N/2 - k`, with `alpha = (1 + a.n)/2`, `beta = (1 - a.n)/2`. The optimal
//! measurement's first moment is `mu = sum_k sqrt(q_k q_{k+1})`.

use statrs::function::gamma::ln_gamma;

use crate::bloch::{ProbeConfig, NORM_TOLERANCE};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralWeights {
    pub n: usize,
    /// `q[k]` is the weight of eigenvalue `N/2 - k`.
    pub q: Vec<f64>,
    log_q: Vec<f64>,
}

impl SpectralWeights {
    pub fn log_weights(&self) -> &[f64] {
        &self.log_q
    }
}

fn check_pure(probe: &ProbeConfig) -> Result<()> {
    let norm = probe.bloch().norm();
    if norm < 1.0 - NORM_TOLERANCE {
        return Err(Error::MixedProbe { norm });
    }
    Ok(())
}

pub fn eigen_weights(probe: &ProbeConfig, n: usize) -> Result<SpectralWeights> {
    check_pure(probe)?;
    if n == 0 {
        return Err(Error::config("entangled benchmark needs N >= 1"));
    }
    let axial = probe.axial().clamp(-1.0, 1.0);
    let (ln_alpha, ln_beta) = ((0.5 * (1.0 + axial)).ln(), (0.5 * (1.0 - axial)).ln());
    let nf = n as f64;
    let ln_n_fact = ln_gamma(nf + 1.0);
    let mut log_q: Vec<f64> = (0..=n)
        .map(|k| {
            let kf = k as f64;
            let ln_binom = ln_n_fact - ln_gamma(kf + 1.0) - ln_gamma(nf - kf + 1.0);
            // 0 * ln(0) contributes nothing
            let a_part = if n - k == 0 { 0.0 } else { (nf - kf) * ln_alpha };
            let b_part = if k == 0 { 0.0 } else { kf * ln_beta };
            ln_binom + a_part + b_part
        })
        .collect();
    // the weights sum to one exactly; remove the rounding of the shared ln N! term
    let top = log_q.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let log_total = top + log_q.iter().map(|l| (l - top).exp()).sum::<f64>().ln();
    log_q.iter_mut().for_each(|l| *l -= log_total);
    let q = log_q.iter().map(|l| l.exp()).collect();
    Ok(SpectralWeights { n, q, log_q })
}

/// First moment `sum_k sqrt(q_k q_{k+1})` of the optimal joint measurement.
pub fn ent_first_moment(probe: &ProbeConfig, n: usize) -> Result<f64> {
    let w = eigen_weights(probe, n)?;
    Ok(w.log_q.windows(2).map(|p| (0.5 * (p[0] + p[1])).exp()).sum())
}

/// `mu^-2 - 1` for the optimal entangled covariant measurement.
pub fn ent_holevo_variance(probe: &ProbeConfig, n: usize) -> Result<f64> {
    let mu = ent_first_moment(probe, n)?;
    if mu < 1e-300 {
        return Err(Error::DegenerateMoment { mu });
    }
    Ok(1.0 / (mu * mu) - 1.0)
}
