use impurity_negativity::cli::parse_config;
use impurity_negativity::scenarios::{self, ReservoirParams, ScenarioConfig, Sweep, SweepEngine, SweepVariable};

fn gc_config(values: &[f64]) -> ScenarioConfig {
    let mut config = parse_config(
        r#"
        scenario = "equilibrium_gc"
        [bath]
        gamma = 1.0
        bandwidth = 50.0
        levels = 60
        [sweep]
        variable = "gamma"
        values = [1.0]
        "#,
    )
    .unwrap();
    config.sweep = Some(Sweep {
        variable: SweepVariable::Gamma,
        values: values.to_vec(),
    });
    config
}

fn relax_config() -> ScenarioConfig {
    parse_config(
        r#"
        scenario = "relaxation"
        [model]
        n0_initial = 0.1
        [bath]
        gamma = 0.05
        bandwidth = 20.0
        levels = 60
        delta = 1.5
        [time]
        values = [0.0, 0.5, 1.0, 2.0, 5.0]
        "#,
    )
    .unwrap()
}

fn junction_config() -> ScenarioConfig {
    parse_config(
        r#"
        scenario = "junction"
        [model]
        n0_initial = 0.25
        [junction]
        gamma = 0.05
        bandwidth = 20.0
        levels = 40
        voltage = 3.0
        [time]
        values = [0.0, 1.0, 4.0, 10.0]
        "#,
    )
    .unwrap()
}

#[test]
fn sweep_rows_equal_single_point_runs() {
    let grid = [0.1, 0.3, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0];
    let engine = SweepEngine::with_workers(3);
    let swept = scenarios::run(&gc_config(&grid), &engine, None).unwrap();
    assert_eq!(swept.xs(), grid);
    for (row, &g) in swept.rows.iter().zip(&grid) {
        let single = scenarios::run(&gc_config(&[g]), &SweepEngine::with_workers(1), None).unwrap();
        assert_eq!(&single.rows[0], row);
    }
}

#[test]
fn repeated_runs_are_identical() {
    let config = junction_config();
    let a = scenarios::run(&config, &SweepEngine::with_workers(1), None).unwrap();
    let b = scenarios::run(&config, &SweepEngine::with_workers(2), None).unwrap();
    assert_eq!(a, b);
}

#[test]
fn gc_rows_are_monotone_in_the_cutoff() {
    let result = scenarios::run(&gc_config(&[0.5, 2.0, 8.0]), &SweepEngine::new(), None).unwrap();
    assert_eq!(
        result.headers(),
        ["gamma", "N_1", "N_2", "N_3", "N_4", "n_0", "particles"]
    );
    for row in &result.rows {
        for pair in row.negativities.windows(2) {
            assert!(pair[0] <= pair[1] + 1e-10, "{row:?}");
        }
    }
}

#[test]
fn dynamics_diagnostics_are_physical() {
    for config in [relax_config(), junction_config()] {
        let result = scenarios::run(&config, &SweepEngine::new(), None).unwrap();
        let n0 = result.column("n_0").unwrap();
        let particles = result.column("particles").unwrap();
        assert!(n0.iter().all(|x| (0.0..=1.0).contains(x)));
        for p in &particles {
            assert!((p - particles[0]).abs() < 1e-9);
        }
    }
}

#[test]
fn product_initial_state_has_no_entanglement() {
    for config in [relax_config(), junction_config()] {
        let result = scenarios::run(&config, &SweepEngine::new(), None).unwrap();
        assert_eq!(result.rows[0].x, 0.0);
        assert!(result.rows[0].negativities.iter().all(|&n| n == 0.0));
        assert!((result.rows[0].diagnostics[0] - config.model.n0_initial).abs() < 1e-15);
    }
}

#[test]
fn parameter_sweep_of_a_dynamic_scenario_evaluates_at_fixed_time() {
    let mut config = junction_config();
    config.sweep = Some(Sweep {
        variable: SweepVariable::Voltage,
        values: vec![0.0, 3.0],
    });
    config.time.evaluate_at = 4.0;
    let swept = scenarios::run(&config, &SweepEngine::new(), None).unwrap();
    let series = scenarios::run(&junction_config(), &SweepEngine::new(), None).unwrap();
    let at_four = &series.rows[2];
    assert_eq!(at_four.x, 4.0);
    for (a, b) in swept.rows[1].negativities.iter().zip(&at_four.negativities) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn canonical_scenario_reports_both_ensembles() {
    let config = parse_config(
        r#"
        scenario = "equilibrium_canonical"
        [model]
        canonical_n = 3
        compare_grand_canonical = true
        [bath]
        gamma = 1.0
        bandwidth = 5.0
        levels = 5
        [sweep]
        variable = "gamma"
        values = [0.1, 1.0]
        "#,
    )
    .unwrap();
    let result = scenarios::run(&config, &SweepEngine::new(), None).unwrap();
    assert_eq!(result.negativity_columns, ["N_can", "N_gc"]);
    assert_eq!(result.column("particles").unwrap(), [3.0, 3.0]);
    for row in &result.rows {
        assert!(row.negativities[0] >= row.negativities[1] - 1e-10);
    }
}

#[test]
fn invalid_sweep_point_is_named_in_the_error() {
    let config = gc_config(&[-1.0, 0.5, 2.0]);
    let err = scenarios::run(&config, &SweepEngine::new(), None)
        .unwrap_err()
        .to_string();
    assert!(err.contains("-1"), "{err}");
    assert!(err.contains("gamma"), "{err}");
}

#[test]
fn mismatched_reservoir_is_rejected() {
    let mut config = relax_config();
    assert!(matches!(config.reservoir, ReservoirParams::Single(_)));
    config.kind = scenarios::ScenarioKind::Junction;
    assert!(scenarios::run(&config, &SweepEngine::new(), None).is_err());
}

#[test]
fn progress_reports_every_point() {
    let count = std::sync::atomic::AtomicUsize::new(0);
    let report = |_: usize, _: usize, total: usize| {
        assert_eq!(total, 4);
        count.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
    };
    scenarios::run(&gc_config(&[0.5, 1.0, 2.0, 3.0]), &SweepEngine::new(), Some(&report)).unwrap();
    assert_eq!(count.into_inner(), 4);
}
