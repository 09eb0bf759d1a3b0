use qphase::harness::{
    emit_csv, run_scenario_with, RunOptions, ScenarioConfig, StrategyRegistry, RESULTS_HEADER,
};

fn scenario(strategy: &str, seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        strategy: strategy.into(),
        probe_counts: vec![11, 20, 33],
        n_boot: 200,
        master_seed: seed,
        ..ScenarioConfig::default()
    }
}

fn csv_bytes(cfg: &ScenarioConfig, workers: usize) -> Vec<u8> {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let rows = run_scenario_with(
        cfg,
        &StrategyRegistry::default(),
        &RunOptions {
            workers: Some(workers),
            timing: false,
        },
    )
    .unwrap();
    emit_csv(&rows, &path).unwrap();
    std::fs::read(&path).unwrap()
}

#[test]
fn byte_identical_across_worker_counts() {
    for strategy in ["covariant", "aqse", "restricted_aqse", "two_step", "two_step_fixed_center", "entangled"] {
        let cfg = scenario(strategy, 17);
        let one = csv_bytes(&cfg, 1);
        assert_eq!(one, csv_bytes(&cfg, 3), "{strategy}");
        assert_eq!(one, csv_bytes(&cfg, 1), "{strategy}");
        assert!(String::from_utf8(one).unwrap().starts_with(RESULTS_HEADER));
    }
}

#[test]
fn seed_changes_simulated_rows() {
    assert_ne!(csv_bytes(&scenario("aqse", 1), 2), csv_bytes(&scenario("aqse", 2), 2));
}

#[test]
fn adding_probe_counts_keeps_existing_rows() {
    // each (N, rep) pair owns its stream, so rows do not depend on their neighbours
    let small = scenario("covariant", 5);
    let big = ScenarioConfig {
        probe_counts: vec![5, 11, 20, 33],
        ..small.clone()
    };
    let a = String::from_utf8(csv_bytes(&small, 2)).unwrap();
    let b = String::from_utf8(csv_bytes(&big, 2)).unwrap();
    for line in a.lines() {
        assert!(b.contains(line), "{line}");
    }
}
