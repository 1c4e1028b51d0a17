use rankfit::{
    compare_models, fit_beta_like, generate_synthetic, parse_csv, BetaLikeParams, IngestOptions,
    ModelKind, ModelParams, NoiseSpec,
};

const PHYSICS_FIXTURE: &str = include_str!("fixtures/physics_n200_sigma0.1_seed42.csv");

fn physics(n: usize) -> ModelParams {
    ModelParams::BetaLike(BetaLikeParams::new(0.0273, 0.4058, 0.991, n).unwrap())
}

#[test]
fn seeded_generator_matches_frozen_fixture() {
    let frozen = parse_csv(PHYSICS_FIXTURE, &IngestOptions::default())
        .unwrap()
        .series;
    let fresh = generate_synthetic(&physics(200), &NoiseSpec::new(0.1, 42).unwrap()).unwrap();
    assert_eq!(frozen.len(), 200);
    // Shortest round-trip decimal text parses back to the identical f64.
    assert_eq!(frozen.values(), fresh.values());
}

#[test]
fn frozen_fixture_is_well_fitted_by_beta_like() {
    let series = parse_csv(PHYSICS_FIXTURE, &IngestOptions::default())
        .unwrap()
        .series;
    let fit = fit_beta_like(&series).unwrap();
    assert!(fit.r_squared >= 0.99, "R² = {}", fit.r_squared);
    let ModelParams::BetaLike(p) = fit.params else {
        panic!()
    };
    assert!(
        (p.a - 0.4058).abs() < 0.1 && (p.b - 0.991).abs() < 0.1,
        "{p:?}"
    );

    let cmp = compare_models(&series).unwrap();
    assert_eq!(cmp.best_by_r2, ModelKind::BetaLike);
    assert!(cmp.nesting_ok);
}
