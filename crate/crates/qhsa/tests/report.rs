use qhsa::config::{load_datum, RunConfig, Suite};
use qhsa::core::superpoly::{Reading, READING};
use qhsa::suites::run;

fn rep_verify(reading: Reading) -> qhsa::report::Report {
    let mut cfg = RunConfig::new(vec![load_datum("bundled:even").unwrap()]).with_suites(&[Suite::RepVerify]);
    cfg.reading = reading;
    run(&cfg).unwrap()
}

#[test]
fn frozen_reading_passes() {
    let r = rep_verify(READING);
    assert!(r.all_passed());
    assert!(r.report.reading.contains("braid_scale=1"));
}

#[test]
fn unmirrored_reading_fails_with_witness() {
    let r = rep_verify(Reading { mirrored_even_dot_crossing: false, ..READING });
    assert!(!r.all_passed());
    assert!(r.failed().all(|c| c.witness.as_deref().is_some_and(|w| !w.is_empty())));
}

#[test]
fn scaled_braid_fails() {
    let r = rep_verify(Reading { braid_scale: 2, ..READING });
    let bad: Vec<_> = r.failed().map(|c| c.id.as_str()).collect();
    assert!(!bad.is_empty());
    // a braid needs three strands
    assert!(bad.iter().all(|id| id.matches(',').count() >= 2), "{bad:?}");
}

#[test]
fn empty_selection_is_an_empty_passing_report() {
    let r = run(&RunConfig::new(qhsa::data::all()).with_suites(&[])).unwrap();
    assert_eq!(r.report.checks, 0);
    assert!(r.all_passed());
    let back = qhsa::report::Report::from_toml(&r.to_toml()).unwrap();
    assert!(back.check.is_empty());
}

#[test]
fn seeded_runs_reproduce() {
    let cfg = |seed| {
        let mut c = RunConfig::new(vec![load_datum("bundled:super").unwrap()]).with_suites(&[Suite::QhsaDifferential]);
        c.seed = seed;
        c
    };
    let (a, b) = (run(&cfg(1)).unwrap(), run(&cfg(2)).unwrap());
    assert!(a.all_passed() && b.all_passed());
    let ids = |r: &qhsa::report::Report| r.check.iter().map(|c| c.id.clone()).collect::<Vec<_>>();
    assert_eq!(ids(&a), ids(&b));
    assert_eq!(run(&cfg(1)).unwrap().to_toml(), a.to_toml());
}
