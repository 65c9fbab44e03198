//! Suite-level behavior: determinism, report serialization, and the
//! documented outcome of a default run.

use graphtok::analysis::{run_verification_suite, CheckTag, SuiteConfig, VerificationReport};

/// A default run passes every check except the walk-token equality of the
/// 12-node switching pair, which measures a claim the pair does not
/// satisfy (the gap is exactly 1/72 at walk length 2 on the switching set;
/// the planarity flip, degree preservation and all other theorem checks
/// hold). See the gm_switching suite for the exact profile.
#[test]
fn default_run_fails_only_the_switching_pair_walk_equality() {
    let report = run_verification_suite(&SuiteConfig::default());
    let failing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    assert_eq!(
        failing,
        vec!["t4_rw_token_equality"],
        "{}",
        report.summary()
    );
    assert!(!report.overall);
    assert_eq!(report.checks.len(), 14);
}

#[test]
fn suite_is_deterministic_for_a_fixed_seed() {
    let cfg = SuiteConfig {
        seed: 20_240_817,
        ..SuiteConfig::default()
    };
    let first = run_verification_suite(&cfg);
    let second = run_verification_suite(&cfg);
    assert!(first.same_results(&second));

    let other_seed = SuiteConfig {
        seed: 1,
        ..SuiteConfig::default()
    };
    let third = run_verification_suite(&other_seed);
    // Same checks in the same order, whatever the seed.
    let names =
        |r: &VerificationReport| r.checks.iter().map(|c| c.name.clone()).collect::<Vec<_>>();
    assert_eq!(names(&first), names(&third));
}

#[test]
fn only_filter_restricts_the_check_list() {
    let report = run_verification_suite(&SuiteConfig::with_only([CheckTag::T5, CheckTag::T7]));
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        vec![
            "t5_disjointness_equivalence",
            "t7_gradient_identity",
            "t7_finite_difference"
        ]
    );
    assert!(report.overall);
}

#[test]
fn report_round_trips_through_json() {
    let report = run_verification_suite(&SuiteConfig::with_only([CheckTag::Detector]));
    let json = report.to_json();
    let parsed = VerificationReport::from_json(&json).unwrap();
    assert!(report.same_results(&parsed));
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(value["overall"].is_boolean());
    let first = &value["checks"][0];
    for key in ["name", "pass", "residual", "elapsed_ms"] {
        assert!(!first[key].is_null(), "missing key {key}");
    }
}

#[test]
fn overall_is_the_conjunction_of_passes() {
    let report = run_verification_suite(&SuiteConfig::default());
    assert_eq!(report.overall, report.checks.iter().all(|c| c.pass));
}
