use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use proptest::prelude::*;
use qphase::bloch::{Angle, ProbeConfig};
use qphase::entangled::ent_holevo_variance;
use qphase::metrics::{
    bad_ci_type1_prob, bad_ci_type1_prob_fq, two_step_floor, two_step_lower_bound, CircularSummary,
};
use qphase::sampling::{sample_covariant, RngStream};

fn wrapped_normal(rng: &mut RngStream, center: f64, sigma: f64, n: usize) -> Vec<Angle> {
    (0..n)
        .map(|_| {
            let (u, v) = (rng.uniform(), rng.uniform());
            let z = (-2.0 * (1.0 - u).ln()).sqrt() * (TAU * v).cos();
            Angle::new(center + sigma * z)
        })
        .collect()
}

#[test]
fn biased_moment_is_never_better_near_the_peak() {
    for (seed, sigma) in [(1u64, 0.05), (2, 0.1), (3, 0.2), (4, 0.3)] {
        let mut rng = RngStream::new(seed);
        let xs = wrapped_normal(&mut rng, 1.0, sigma, 5000);
        let biased = CircularSummary::new(&xs, Some(Angle::new(1.0))).unwrap();
        let unbiased = CircularSummary::new(&xs, None).unwrap();
        // mean cos(x - theta) <= |mean exp(ix)| always
        assert!(biased.holevo_variance >= unbiased.holevo_variance - 1e-15, "sigma = {sigma}");
        // oracle: wrapped normal has mu = exp(-sigma^2 / 2)
        let expect = (sigma * sigma).exp() - 1.0;
        assert!((biased.holevo_variance - expect).abs() < 4.0 * biased.variance_std_error() + 1e-4);
    }
}

#[test]
fn covariant_draws_reach_single_shot_variance() {
    for (seed, fq) in [(31u64, 1.0f64), (32, 0.75), (33, 0.5)] {
        let probe = ProbeConfig::pure_with_axial((1.0 - fq).sqrt()).unwrap();
        let mut rng = RngStream::new(seed);
        let xs: Vec<Angle> = (0..100_000).map(|_| sample_covariant(&mut rng, &probe, Angle::new(0.4))).collect();
        let s = CircularSummary::new(&xs, None).unwrap();
        let expect = 4.0 / fq - 1.0;
        assert!(
            (s.holevo_variance - expect).abs() < 3.0 * s.variance_std_error(),
            "F_Q = {fq}: {} vs {expect} (se {})",
            s.holevo_variance,
            s.variance_std_error()
        );
    }
}

#[test]
fn entangled_invariants() {
    for axial in [0.0, 0.5, 0.9] {
        let p = ProbeConfig::pure_with_axial(axial).unwrap();
        assert!((ent_holevo_variance(&p, 1).unwrap() - (4.0 / p.fisher() - 1.0)).abs() < 1e-12);
        let vs: Vec<f64> = (1..=256).map(|n| ent_holevo_variance(&p, n).unwrap()).collect();
        assert!(vs.windows(2).all(|w| w[1] <= w[0]), "a.n = {axial}");
    }
    let p = ProbeConfig::pure_with_axial(0.3).unwrap();
    assert!(ent_holevo_variance(&p, 4096).unwrap().is_finite());
}

proptest! {
    #[test]
    fn two_step_bound_falls_to_its_floor(n1 in 1usize..60, n2 in 0usize..5000, axial in 0.0..0.95f64, level in 0.5..1.0f64, e in 0.01..3.0f64) {
        let p = ProbeConfig::pure_with_axial(axial).unwrap();
        let here = two_step_lower_bound(&p, n1, n2, level, e);
        let next = two_step_lower_bound(&p, n1, n2 + 1, level, e);
        prop_assert!(next < here);
        prop_assert!(next > two_step_floor(level, e));
        let far = two_step_lower_bound(&p, n1, usize::MAX / 2, level, e);
        prop_assert!((far - two_step_floor(level, e)).abs() < 1e-15);
    }

    #[test]
    fn bad_interval_probability_is_monotone(n in 1usize..100, fq in 0.0..0.99f64, eps in 0.01..=FRAC_PI_2) {
        let here = bad_ci_type1_prob_fq(fq, n, eps);
        prop_assert!(bad_ci_type1_prob_fq(fq, n + 1, eps) <= here);
        prop_assert!(bad_ci_type1_prob_fq(fq + 0.01, n, eps) <= here);
        prop_assert!((0.0..=1.0).contains(&here));
    }
}

#[test]
fn bad_interval_probability_in_log_space() {
    let p = ProbeConfig::pure_with_axial(0.0).unwrap();
    let tiny = bad_ci_type1_prob(&p, 120, FRAC_PI_4);
    // ((pi/4 - sin(pi/4)) / pi)^120 is about 3.87e-193
    assert!((tiny / 3.869_817_936_878_133e-193 - 1.0).abs() < 1e-10, "{tiny}");
}
