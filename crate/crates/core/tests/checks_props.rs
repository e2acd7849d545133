mod common;

use rand::Rng;

use twistwick::checks::{
    check_relation_jsw, reevaluate_witness, run_all, CheckConfig, SkipReason, Verdict, IMPLIES_IDEAL, IMPLIES_PI_STAR,
    SUITE_ORDER,
};
use twistwick::par::Exec;
use twistwick::tensor::Limits;
use twistwick::{builtin_preset, Preset};

use common::{any_twist, rng, symbolic_twist};

fn cfg(n: usize, exec: Exec) -> CheckConfig {
    CheckConfig {
        exec,
        ..CheckConfig::with_degree(n)
    }
}

#[test]
fn failing_witnesses_reproduce_their_residuals() {
    let mut r = rng(11);
    let mut seen = 0;
    for _ in 0..30 {
        let d = r.gen_range(1..=2);
        let (_, ts) = any_twist(&mut r, d);
        let c = cfg(3, Exec::default());
        for rep in run_all(&ts, &c).unwrap() {
            if rep.verdict != Verdict::Fail || rep.name == IMPLIES_IDEAL || rep.name == IMPLIES_PI_STAR {
                continue;
            }
            let w = rep.witness.as_ref().expect("failures carry a witness");
            assert!(!w.residual.is_zero(), "{}", rep.name);
            let again = reevaluate_witness(&ts, rep.name, w, &c).unwrap();
            assert_eq!(again, w.residual, "{}", rep.name);
            seen += 1;
        }
    }
    assert!(seen > 10, "only {seen} failures exercised");
}

#[test]
fn symbolic_failures_also_reproduce() {
    let mut r = rng(12);
    for _ in 0..6 {
        let ts = symbolic_twist(&mut r, 2);
        let c = cfg(3, Exec::default());
        for rep in run_all(&ts, &c).unwrap() {
            if let (Verdict::Fail, Some(w)) = (&rep.verdict, &rep.witness) {
                assert_eq!(reevaluate_witness(&ts, rep.name, w, &c).unwrap(), w.residual, "{}", rep.name);
            }
        }
    }
}

#[test]
fn verdicts_do_not_depend_on_parallelism() {
    let mut r = rng(13);
    for _ in 0..10 {
        let d = r.gen_range(1..=2);
        let (_, ts) = any_twist(&mut r, d);
        let par = run_all(&ts, &cfg(3, Exec::Parallel)).unwrap();
        let seq = run_all(&ts, &cfg(3, Exec::Sequential)).unwrap();
        assert_eq!(par, seq);
        assert_eq!(par, run_all(&ts, &cfg(3, Exec::Parallel)).unwrap());
    }
}

#[test]
fn suite_order_is_reported() {
    let ts = builtin_preset("boson", 2).unwrap();
    let names: Vec<&str> = run_all(&ts, &cfg(3, Exec::default())).unwrap().iter().map(|c| c.name).collect();
    assert_eq!(names, SUITE_ORDER);
}

#[test]
fn commutation_check_passes_for_arbitrary_twists() {
    let mut r = rng(14);
    for _ in 0..15 {
        let d = r.gen_range(1..=3);
        let (f, ts) = any_twist(&mut r, d);
        let rep = check_relation_jsw(&ts, &cfg(3, Exec::default()));
        assert!(rep.passed(), "{f:?}: {:?}", rep.verdict);
    }
}

#[test]
fn small_caps_skip_for_resources() {
    let ts = builtin_preset("boson", 3).unwrap();
    let c = CheckConfig {
        limits: Limits {
            max_space_dim: 30,
            ..Limits::default()
        },
        ..CheckConfig::with_degree(4)
    };
    let reports = run_all(&ts, &c).unwrap();
    assert!(reports.iter().all(|c| !c.failed()));
    assert!(reports
        .iter()
        .any(|c| matches!(c.verdict, Verdict::Skipped { reason: SkipReason::Resource, .. })));
}

#[test]
fn alternative_exponents_fail_consistency() {
    let ts = twistwick::TwistSystem::preset(Preset::QDeformAlt, 2).unwrap();
    let reports = run_all(&ts, &cfg(3, Exec::default())).unwrap();
    let by = |n: &str| reports.iter().find(|c| c.name == n).unwrap().verdict.clone();
    assert_eq!(by(twistwick::checks::WZ), Verdict::Fail);
    assert!(matches!(by(twistwick::checks::RELATION_DD), Verdict::Skipped { reason: SkipReason::Prerequisite, .. }));
    assert!(reports.iter().all(|c| c.verdict != Verdict::Unsound));
}
