//! Fast suites run in full. Checks listed in `KNOWN_FAIL` are red because the claims they test
//! do not hold as stated; the README explains each one.

use tensekit::suites::{run, Options, Status, SuiteReport};

const KNOWN_FAIL: &[(&str, &str)] = &[
    ("facts-bounds", "bd/n=1"),
    ("facts-bounds", "bd/n=2"),
    ("kt-section4", "gamma_n-truth"),
    ("kt-section4", "gamma_star-truth"),
    ("kt-section4", "F_I-validates-Delta-gamma_star"),
    ("kt-section4", "valid-on-F_I"),
    ("kt-section4", "refuted-on-F_J"),
    ("s4t-section5", "sep/claim-1"),
];

fn expected_fail(suite: &str, id: &str) -> bool {
    KNOWN_FAIL.iter().any(|(s, tail)| *s == suite && (id == *tail || id.ends_with(&format!("/{tail}"))))
}

fn report(name: &str) -> SuiteReport {
    run(name, &Options::default()).unwrap()
}

fn assert_shape(r: &SuiteReport) {
    assert!(!r.checks.is_empty());
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted, "checks are sorted by id");
    for c in &r.checks {
        match c.status {
            Status::Pass | Status::Info => {}
            Status::Fail | Status::Budget => {
                assert!(expected_fail(&r.suite, &c.id), "{} {} failed: {}", r.suite, c.id, c.detail);
                assert!(!c.detail.is_null());
            }
        }
    }
    assert_eq!(r.passed, r.failures().next().is_none());
    for (suite, tail) in KNOWN_FAIL.iter().filter(|(s, _)| *s == r.suite) {
        assert!(
            r.failures().any(|c| c.id == *tail || c.id.ends_with(&format!("/{tail}"))),
            "{suite} {tail} no longer fails"
        );
    }
}

#[test]
fn facts_bounds() {
    assert_shape(&report("facts-bounds"));
}

#[test]
fn unfolding() {
    let r = report("unfolding");
    assert_shape(&r);
    assert!(r.passed);
}

#[test]
fn kt_ladder() {
    let r = report("kt-section4");
    assert_shape(&r);
    // The observed shift is the same for every pair.
    for c in r.checks.iter().filter(|c| c.id.ends_with("gamma_n-observed-shift")) {
        assert_eq!(c.detail["shift"], 3);
    }
    // With the shift applied every claim holds.
    for c in r.checks.iter().filter(|c| c.id.ends_with("shifted-claims")) {
        assert_eq!(c.detail["gamma_star_claim_mismatches"], serde_json::json!([]));
        assert_eq!(c.detail["F_I_validates_Delta_gamma_star_i_plus_shift"], true);
        for s in c.detail["separators"].as_array().unwrap() {
            assert_eq!((s["valid_on_F_I"].clone(), s["refuted_on_F_J"].clone()), (true.into(), true.into()));
        }
    }
}

#[test]
fn s4_ladder() {
    let r = report("s4t-section5");
    assert_shape(&r);
    let find = |id: &str| r.checks.iter().find(|c| c.id == id).unwrap();
    assert_eq!(find("drawn/adjacency").status, Status::Pass);
    assert_eq!(find("rigidity/images-up-to-3").status, Status::Pass);
}

#[test]
fn sufficiency_and_coherence() {
    for name in ["sufficiency", "coherence"] {
        let r = report(name);
        assert_shape(&r);
        assert!(r.passed, "{name}");
    }
}

#[test]
fn same_seed_same_report() {
    let strip = |r: SuiteReport| {
        let mut v = serde_json::to_value(r).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip(report("kt-section4")), strip(report("kt-section4")));
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(run("nope", &Options::default()).is_err());
}
