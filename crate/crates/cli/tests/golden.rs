use std::path::PathBuf;
use std::process::{Command, Output};

use rlcm::report::{parse_machine, Status};

fn rlcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rlcm"))
        .args(args)
        .current_dir(repo_root())
        .output()
        .expect("binary runs")
}

fn repo_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = rlcm(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn analyze_reports_match_golden_files() {
    for (instance, file) in [
        ("free:X01", "free_X01.txt"),
        ("odometer", "odometer.txt"),
        ("modified-odometer", "modified_odometer.txt"),
        ("nat:2", "nat_2.txt"),
    ] {
        assert_eq!(stdout(&["analyze", instance]), golden(file), "{instance}");
    }
}

#[test]
fn odometer_report_names_the_route_to_condition_h() {
    let text = stdout(&["analyze", "odometer"]);
    assert!(text.lines().any(|l| l == "condition (H): HOLDS (bound=6, via MSF finiteness)"));
}

#[test]
fn msf_and_germ_commands() {
    assert_eq!(
        stdout(&["msf", "modified-odometer", "--element", "z^2", "--max-len", "6"]),
        golden("msf_z2.txt")
    );
    assert_eq!(
        stdout(&["germ", "odometer", "--s", "(ε, z, ε)", "--point", "(1)"]),
        golden("germ_odometer.txt")
    );
}

#[test]
fn machine_output_round_trips() {
    let json = stdout(&["analyze", "modified-odometer", "--depth", "4", "--format", "machine"]);
    let report = parse_machine(&json).unwrap();
    assert_eq!(report.instance, "modified-odometer");
    assert_eq!(report.depth, 4);
    assert!(report.check("e_star_unitary").unwrap().status.is_fails());
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, json);
}

#[test]
fn spec_files_are_analyzed() {
    let text = stdout(&["analyze", "specs/non-faithful.spec", "--depth", "4"]);
    assert!(text.contains("topological freeness: FAILS"), "{text}");
    let report = parse_machine(&stdout(&["analyze", "specs/odometer.spec", "--depth", "4", "--format", "machine"])).unwrap();
    assert!(matches!(report.check("condition_h").unwrap().status, Status::Holds { .. }));
}

#[test]
fn bad_input_exits_with_status_2() {
    for args in [
        &["analyze", "specs/not-a-bijection.spec"][..],
        &["analyze", "no-such-instance"],
        &["germ", "nat:2", "--s", "((0,0), (0,0))", "--point", "(0)"],
        &["msf", "odometer", "--element", "q"],
    ] {
        let out = rlcm(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.starts_with("rlcm: "), "{err}");
    }
    let err = String::from_utf8(rlcm(&["analyze", "specs/not-a-bijection.spec"]).stderr).unwrap();
    assert!(err.contains("letter bijection"), "{err}");
}
