use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::estimators::TwoStepPlan;
use crate::metrics::{delta1_bound, qcrb, two_step_lower_bound};

use super::config::ScenarioConfig;
use super::runner::{BadCiRow, BootstrapResult};

pub const RESULTS_HEADER: &str = "n_probes,strategy,holevo_variance,mu,bad_ci_count,reps,seed,wall_seconds";
pub const CURVES_HEADER: &str = "n_probes,qcrb,delta1_bound,two_step_bound,covariant_crb";
pub const BAD_CI_HEADER: &str = "steps,n_probes,bad_ci_count,reps";

/// Seventeen significant digits: positional for moderate magnitudes,
/// scientific otherwise.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return format!("{:.16}", 0.0);
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..17).contains(&exp) {
        format!("{:.*}", (16 - exp) as usize, x)
    } else {
        sci
    }
}

pub fn results_csv(results: &[BootstrapResult]) -> String {
    let mut rows: Vec<&BootstrapResult> = results.iter().collect();
    rows.sort_by(|a, b| (&a.strategy, a.n_probes).cmp(&(&b.strategy, b.n_probes)));
    let mut out = String::from(RESULTS_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n_probes,
            r.strategy,
            format_float(r.holevo_variance),
            format_float(r.mu),
            r.bad_ci_count,
            r.reps,
            r.seed,
            format_float(r.wall_seconds)
        );
    }
    out
}

pub fn reference_curves_csv(cfg: &ScenarioConfig) -> Result<String> {
    let probe = cfg.probe()?;
    let plan = TwoStepPlan::new(&probe, cfg.c_level, cfg.half_width)?;
    let mut out = String::from(CURVES_HEADER);
    out.push('\n');
    for &n in &cfg.probe_counts {
        let n1 = n.min(plan.n1);
        let n2 = n - n1;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            n,
            format_float(qcrb(&probe, n)),
            format_float(delta1_bound(&probe, n1, n2)),
            format_float(two_step_lower_bound(&probe, n1, n2, cfg.c_level, cfg.half_width)),
            format_float(1.0 / (n as f64 * plan.fisher))
        );
    }
    Ok(out)
}

pub fn bad_ci_csv(rows: &[BadCiRow]) -> String {
    let mut out = String::from(BAD_CI_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.steps, r.n_probes, r.count, r.reps);
    }
    out
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes results sorted by `(strategy, n_probes)`.
pub fn emit_csv(results: &[BootstrapResult], path: &Path) -> Result<()> {
    write_text(path, &results_csv(results))
}

pub fn emit_reference_curves(cfg: &ScenarioConfig, path: &Path) -> Result<()> {
    write_text(path, &reference_curves_csv(cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::Vec3;

    fn row(n: usize, strategy: &str) -> BootstrapResult {
        BootstrapResult {
            n_probes: n,
            strategy: strategy.into(),
            holevo_variance: 3.0,
            mu: 0.5,
            bad_ci_count: -1,
            reps: 0,
            seed: 42,
            wall_seconds: 0.0,
            std_error: 0.0,
        }
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(3.0), "3.0000000000000000");
        assert_eq!(format_float(0.5), "0.50000000000000000");
        assert_eq!(format_float(0.0078125), "0.0078125000000000000");
        assert_eq!(format_float(1e-30), "1.0000000000000001e-30");
        assert_eq!(format_float(2.5e20), "2.5000000000000000e20");
        assert_eq!(format_float(0.1).parse::<f64>().unwrap(), 0.1);
        let x = 0.013_981_002_750_680_85;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn results_layout() {
        assert_eq!(results_csv(&[]), format!("{RESULTS_HEADER}\n"));
        let text = results_csv(&[row(1, "entangled")]);
        assert_eq!(
            text.lines().nth(1).unwrap(),
            "1,entangled,3.0000000000000000,0.50000000000000000,-1,0,42,0.0000000000000000"
        );
        let text = results_csv(&[row(8, "covariant"), row(4, "entangled"), row(2, "entangled"), row(8, "aqse")]);
        let keys: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').take(2).last().unwrap()).collect();
        assert_eq!(keys, ["aqse", "covariant", "entangled", "entangled"]);
        assert!(text.lines().nth(3).unwrap().starts_with("2,entangled"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn curves_values() {
        let cfg = ScenarioConfig {
            probe_counts: vec![5, 11, 128, 1 << 20],
            ..ScenarioConfig::default()
        };
        let text = reference_curves_csv(&cfg).unwrap();
        let rows: Vec<Vec<f64>> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        assert_eq!(rows[2][1], 0.0078125);
        assert!((rows[1][2] - 1.0 / 11.0).abs() < 1e-15);
        assert!((rows[0][2] - 1.0 / 5.0).abs() < 1e-15);
        assert!((rows[2][2] - 1.0 / 128.0).abs() < 1e-15);
        assert!((rows[3][3] - 0.01 * (std::f64::consts::FRAC_PI_4).powi(2)).abs() < 1e-5);

        let cfg = ScenarioConfig {
            a: Vec3::new(0.75f64.sqrt(), 0.0, 0.5),
            probe_counts: vec![22],
            ..ScenarioConfig::default()
        };
        let text = reference_curves_csv(&cfg).unwrap();
        let vals: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|v| v.parse().unwrap()).collect();
        assert!((vals[2] - 1.0 / 11.0).abs() < 1e-14);
        assert!((vals[4] - 1.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn io_errors_name_the_path() {
        let err = emit_csv(&[], Path::new("/nonexistent-dir/out.csv")).unwrap_err();
        assert!(err.is_io());
        assert!(err.to_string().contains("/nonexistent-dir/out.csv"));
    }
}
