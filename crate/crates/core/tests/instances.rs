use std::path::PathBuf;

use rlcm::instances::self_similar::{act, SelfSimilarGroup};
use rlcm::instances::TreeSemigroup;
use rlcm::report::{load_instance, parse_machine, render_report, AnalyzeOptions, AnyInstance, Format, Status};
use rlcm::Error;

fn spec(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../specs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn shallow() -> AnalyzeOptions {
    AnalyzeOptions {
        depth: 4,
        ..AnalyzeOptions::default()
    }
}

#[test]
fn spec_odometer_matches_the_builtin() {
    let (AnyInstance::Power(a), AnyInstance::Power(b)) =
        (load_instance(&spec("odometer.spec")).unwrap(), load_instance("odometer").unwrap())
    else {
        panic!("integer-power instances expected");
    };
    let (ga, gb) = (a.group(), b.group());
    for m in ["z", "z^-3", "z^5"] {
        for w in ga.alphabet().words_up_to(6) {
            assert_eq!(act(ga, &ga.parse(m).unwrap(), &w), act(gb, &gb.parse(m).unwrap(), &w));
        }
    }
}

#[test]
fn portrait_odometer_acts_like_the_odometer() {
    let AnyInstance::Portrait(p) = load_instance(&spec("portrait-odometer.spec")).unwrap() else {
        panic!("portrait instance expected");
    };
    let AnyInstance::Power(o) = load_instance("odometer").unwrap() else {
        panic!("integer-power instance expected");
    };
    let (gp, go) = (p.group(), o.group());
    let z = gp.parse("z").unwrap();
    for w in gp.alphabet().words_up_to(6) {
        assert_eq!(act(gp, &z, &w), act(go, &go.parse("z").unwrap(), &w));
    }
}

#[test]
fn malformed_specs_are_rejected() {
    match load_instance(&spec("not-a-bijection.spec")) {
        Err(e @ Error::Construction { .. }) => assert!(e.to_string().contains("letter bijection"), "{e}"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(load_instance("does-not-exist.spec"), Err(Error::Usage(_))));
    assert!(load_instance("free:").is_err());
}

#[test]
fn flip_table_instance_is_analyzed() {
    let report = load_instance(&spec("flip.spec")).unwrap().analyze(&shallow());
    assert!(report.check("condition_h").unwrap().status.is_holding());
    assert!(report.check("axioms").unwrap().status.is_holding());
}

#[test]
fn non_faithful_fixture_is_not_topologically_free() {
    let report = load_instance(&spec("non-faithful.spec")).unwrap().analyze(&shallow());
    assert!(report.check("topological_freeness").unwrap().status.is_fails());
    assert!(!report.check("simplicity").unwrap().status.is_holding());
}

#[test]
fn undecided_checks_report_their_bound() {
    let report = load_instance("nat:2").unwrap().analyze(&shallow());
    let pure = &report.check("pure_infiniteness").unwrap().status;
    assert_eq!(*pure, Status::Unknown { bound: 4 });
    let text = render_report(&report, Format::Text);
    assert!(text.contains("pure infiniteness: UNKNOWN at bound 4"), "{text}");
    assert!(report.check("locally_contracting").unwrap().status.is_fails());
}

#[test]
fn machine_reports_round_trip() {
    let report = load_instance("free:X01").unwrap().analyze(&shallow());
    let json = render_report(&report, Format::Machine);
    assert_eq!(parse_machine(&json).unwrap(), report);
    let bumped = json.replacen("\"schema_version\": 1", "\"schema_version\": 99", 1);
    assert!(parse_machine(&bumped).is_err());
}
