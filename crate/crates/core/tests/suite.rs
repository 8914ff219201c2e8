use sections::acceptance::{run_suite, SuiteConfig};

#[test]
fn nu_filter_runs_the_measure_family() {
    let cfg = SuiteConfig { filter: Some("nu".into()), ..SuiteConfig::default() };
    let ids: Vec<u32> = run_suite(&cfg).iter().map(|o| o.id).collect();
    assert_eq!(ids, vec![2, 5]);
}

#[test]
fn filter_accepts_a_list() {
    let cfg = SuiteConfig { filter: Some("1, rotation,phi".into()), ..SuiteConfig::default() };
    let ids: Vec<u32> = run_suite(&cfg).iter().map(|o| o.id).collect();
    assert_eq!(ids, vec![1, 3, 4, 9]);
}

#[test]
fn injected_perturbation_fails_distinguishability() {
    let cfg = SuiteConfig { filter: Some("verify".into()), inject_perturbation: Some(1e-3), ..SuiteConfig::default() };
    let out = run_suite(&cfg);
    assert_eq!(out.len(), 1);
    assert!(!out[0].passed, "negative control passed: {}", out[0].detail);
    assert!(out[0].detail.contains("1 false-consistent"));
}
