//! Scenario configuration and its flat `key = value` text format.
//!
//! ```text
//! # restricted AQSE at theta = pi
//! strategy = restricted_aqse
//! a = 1, 0, 0
//! n = 0, 0, 1
//! theta_true = 3.141592653589793
//! probe_counts = 16, 32, 64, 128
//! n_boot = 2000
//! restricted_domain = 1.5707963267948966, 4.71238898038469
//! master_seed = 7
//! ```

use std::f64::consts::{FRAC_PI_4, PI};
use std::path::Path;

use crate::bloch::{Angle, ProbeConfig, Vec3};
use crate::error::{Error, Result};
use crate::estimators::{default_restricted_domain, CircularInterval};

use super::strategy::normalize_name;

pub const DEFAULT_PROBE_COUNTS: [usize; 8] = [1, 2, 4, 8, 16, 32, 64, 128];
pub const DEFAULT_BOOT: usize = 10_000;
pub const DEFAULT_C_LEVEL: f64 = 0.99;
pub const DEFAULT_HALF_WIDTH: f64 = FRAC_PI_4;
pub const DEFAULT_THETA: f64 = PI;

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub a: Vec3,
    pub n: Vec3,
    pub theta_true: Angle,
    /// Registered strategy name, underscores only.
    pub strategy: String,
    pub probe_counts: Vec<usize>,
    pub n_boot: usize,
    pub c_level: f64,
    pub half_width: f64,
    pub restricted_domain: Option<CircularInterval>,
    pub g0: Angle,
    pub master_seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            a: Vec3::new(1.0, 0.0, 0.0),
            n: Vec3::new(0.0, 0.0, 1.0),
            theta_true: Angle::new(DEFAULT_THETA),
            strategy: "covariant".into(),
            probe_counts: DEFAULT_PROBE_COUNTS.to_vec(),
            n_boot: DEFAULT_BOOT,
            c_level: DEFAULT_C_LEVEL,
            half_width: DEFAULT_HALF_WIDTH,
            restricted_domain: None,
            g0: Angle::ZERO,
            master_seed: 0,
        }
    }
}

impl ScenarioConfig {
    pub fn probe(&self) -> Result<ProbeConfig> {
        ProbeConfig::new(self.a, self.n)
    }

    /// Domain used by restricted AQSE: the configured one, or half-width pi/2
    /// around the true phase.
    pub fn domain(&self) -> CircularInterval {
        self.restricted_domain
            .unwrap_or_else(|| default_restricted_domain(self.theta_true))
    }

    /// Checks everything that does not depend on the strategy itself.
    pub fn validate(&self) -> Result<()> {
        self.probe()?;
        if self.probe_counts.is_empty() {
            return Err(Error::config("probe_counts is empty"));
        }
        if self.probe_counts.iter().any(|&n| n == 0) {
            return Err(Error::config("probe counts must be positive"));
        }
        if self.probe_counts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("probe_counts must be strictly increasing"));
        }
        if self.n_boot == 0 {
            return Err(Error::config("n_boot must be positive"));
        }
        if !(self.c_level > 0.0 && self.c_level <= 1.0) {
            return Err(Error::config(format!("c_level must lie in (0, 1], got {}", self.c_level)));
        }
        if !(self.half_width > 0.0 && self.half_width < PI) {
            return Err(Error::config(format!("half_width_E must lie in (0, pi), got {}", self.half_width)));
        }
        if self.restricted_domain.is_some() && self.strategy != "restricted_aqse" {
            return Err(Error::config(format!(
                "restricted_domain only applies to restricted_aqse, not {}",
                self.strategy
            )));
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`. Blank lines and `#`
    /// comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::config(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| Error::config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = ScenarioConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_text(&text)
    }

    /// Sets one field from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "a" => self.a = parse_vec3(value)?,
            "n" => self.n = parse_vec3(value)?,
            "theta_true" => self.theta_true = Angle::new(parse_f64(value)?),
            "strategy" => self.strategy = normalize_name(value),
            "probe_counts" => self.probe_counts = parse_list(value)?,
            "n_boot" => self.n_boot = parse_num(value)?,
            "c_level" => self.c_level = parse_f64(value)?,
            "half_width_E" | "half_width" => self.half_width = parse_f64(value)?,
            "restricted_domain" => {
                self.restricted_domain = if value.is_empty() || value == "none" {
                    None
                } else {
                    Some(parse_domain(value)?)
                }
            }
            "g0" => self.g0 = Angle::new(parse_f64(value)?),
            "master_seed" | "seed" => self.master_seed = parse_num(value)?,
            _ => return Err(Error::config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }
}

pub fn parse_f64(s: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("`{s}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::config(format!("`{s}` is not finite")));
    }
    Ok(v)
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::config(format!("`{s}` is not a non-negative integer")))
}

pub fn parse_vec3(s: &str) -> Result<Vec3> {
    let parts = s.split(',').map(parse_f64).collect::<Result<Vec<_>>>()?;
    match parts[..] {
        [x, y, z] => Ok(Vec3::new(x, y, z)),
        _ => Err(Error::InvalidVector(format!("expected three components, got `{s}`"))),
    }
}

pub fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_num).collect()
}

/// `lo,hi`: the arc running counter-clockwise from `lo` to `hi`.
pub fn parse_domain(s: &str) -> Result<CircularInterval> {
    match s.split(',').map(parse_f64).collect::<Result<Vec<_>>>()?[..] {
        [lo, hi] => CircularInterval::from_bounds(lo, hi),
        _ => Err(Error::config(format!("expected `lo,hi`, got `{s}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn parses_documented_keys() {
        let cfg = ScenarioConfig::from_text(
            "# comment\n\
             strategy = restricted-aqse\n\
             a = 0.8660254037844387, 0, 0.5\n\
             n = 0,0,1\n\
             theta_true = 3.141592653589793\n\
             probe_counts = 16, 32,128\n\
             n_boot = 2000\n\
             c_level = 0.95\n\
             half_width_E = 0.5   # trailing comment\n\
             restricted_domain = 1.5707963267948966, 4.71238898038469\n\
             g0 = 0.25\n\
             master_seed = 18446744073709551615\n",
        )
        .unwrap();
        assert_eq!(cfg.strategy, "restricted_aqse");
        assert_eq!(cfg.probe_counts, vec![16, 32, 128]);
        assert_eq!(cfg.n_boot, 2000);
        assert_eq!(cfg.master_seed, u64::MAX);
        assert!((cfg.probe().unwrap().fisher() - 0.75).abs() < 1e-12);
        let d = cfg.restricted_domain.unwrap();
        assert!((d.center().value() - PI).abs() < 1e-12);
        assert!((d.half_width() - FRAC_PI_2).abs() < 1e-12);
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ScenarioConfig::from_text("bogus = 1").unwrap_err().is_config());
        assert!(ScenarioConfig::from_text("a = 1,0").is_err());
        assert!(ScenarioConfig::from_text("n_boot = -3").is_err());
        assert!(ScenarioConfig::from_text("just words").is_err());

        let mut cfg = ScenarioConfig::default();
        cfg.probe_counts = vec![4, 2];
        assert!(cfg.validate().is_err());
        let mut cfg = ScenarioConfig::default();
        cfg.restricted_domain = Some(CircularInterval::full());
        assert!(cfg.validate().is_err());
        let mut cfg = ScenarioConfig::default();
        cfg.a = Vec3::new(0.0, 0.0, 1.0);
        assert!(cfg.validate().unwrap_err().is_config());
    }

    #[test]
    fn default_domain_centres_on_truth() {
        let cfg = ScenarioConfig::default();
        let d = cfg.domain();
        assert_eq!(d.center(), cfg.theta_true);
        assert!((d.half_width() - FRAC_PI_2).abs() < 1e-15);
    }
}
