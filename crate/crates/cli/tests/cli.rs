//! Behavior of the scenario loader and the binary: eager validation,
//! round-trip stability, report determinism, and the exit-code contract.

use orbigpd_cli::scenario::validation_summary;
use orbigpd_cli::{parse_scenario, run_command, Command, Context, ScenarioError};
use std::path::PathBuf;
use std::process::Output;

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn default_context() -> Context {
    Context { max_group_order: orbigpd::DEFAULT_MAX_GROUP_ORDER, force_oracle: false }
}

fn binary() -> PathBuf {
    // target/debug/orbigpd next to the test executable's directory
    let mut path = std::env::current_exe().expect("test binary path");
    path.pop();
    if path.ends_with("deps") {
        path.pop();
    }
    path.push("orbigpd");
    path
}

fn run_binary(args: &[&str]) -> Output {
    std::process::Command::new(binary()).args(args).output().expect("binary runs")
}

#[test]
fn minimal_document_parses() {
    let scenario =
        parse_scenario(r#"{"schema":1,"groups":{"e":{"kind":"table","table":[[0]]}}}"#, 64)
            .unwrap();
    assert_eq!(scenario.group("e").unwrap().group.order(), 1);
}

#[test]
fn octagon_fixture_loads_with_the_expected_lineage() {
    let text = std::fs::read_to_string(fixture_path("d2_circle")).unwrap();
    let scenario = parse_scenario(&text, 64).unwrap();
    let octagon = scenario.complex("octagon").unwrap();
    let lineage = orbigpd::gspace::isotropy_lineage(octagon).unwrap();
    let members: Vec<Vec<usize>> =
        lineage.subgroups().iter().map(|s| s.members().to_vec()).collect();
    assert_eq!(members, vec![vec![0], vec![0, 1], vec![0, 2]]);
    assert!(!validation_summary(&scenario).is_empty());
}

#[test]
fn non_associative_table_is_a_validation_error() {
    let text = r#"{"schema":1,"groups":{"bad":{"kind":"table","table":[[0,1,2],[1,2,0],[2,1,0]]}}}"#;
    match parse_scenario(text, 64) {
        Err(ScenarioError::Validation { entity, .. }) => assert_eq!(entity, "groups.bad"),
        Err(other) => panic!("expected a validation error, got {other}"),
        Ok(_) => panic!("expected a validation error"),
    }
}

#[test]
fn malformed_json_reports_position() {
    match parse_scenario("{\n  \"schema\": 1,,\n}", 64) {
        Err(ScenarioError::Parse { line, .. }) => assert_eq!(line, 2),
        Err(other) => panic!("expected a parse error, got {other}"),
        Ok(_) => panic!("expected a parse error"),
    }
}

#[test]
fn scenario_round_trip_is_identity() {
    for name in ["d2_circle", "z4_tower", "s3_points"] {
        let text = std::fs::read_to_string(fixture_path(name)).unwrap();
        let first = parse_scenario(&text, 64).unwrap();
        let serialized = first.serialize();
        let second = parse_scenario(&serialized, 64).unwrap();
        assert_eq!(first.raw, second.raw, "round trip changed {name}");
        assert_eq!(serialized, second.serialize());
    }
}

#[test]
fn reports_are_deterministic() {
    let text = std::fs::read_to_string(fixture_path("d2_circle")).unwrap();
    let scenario = parse_scenario(&text, 64).unwrap();
    let command: Command = serde_json::from_str(
        r#"{"cmd":"bredon","complex":"octagon","system":"rep_d2","max_degree":2}"#,
    )
    .unwrap();
    let a = run_command(&scenario, &command, &default_context()).unwrap();
    let b = run_command(&scenario, &command, &default_context()).unwrap();
    assert_eq!(a.render_machine(), b.render_machine());
    assert_eq!(a.render_human(), b.render_human());
}

#[test]
fn run_command_dispatches_each_verb() {
    let text = std::fs::read_to_string(fixture_path("d2_circle")).unwrap();
    let scenario = parse_scenario(&text, 64).unwrap();
    let commands = [
        r#"{"cmd":"validate","target":"all"}"#,
        r#"{"cmd":"subgroups","group":"d2"}"#,
        r#"{"cmd":"fixed","complex":"octagon","subgroup":[0,1]}"#,
        r#"{"cmd":"quotient","complex":"octagon","kernel":[0,3]}"#,
        r#"{"cmd":"induce","complex":"pt_s1","via":"s1grp"}"#,
        r#"{"cmd":"ess-check","map":"quot"}"#,
        r#"{"cmd":"decompose","map":"quot"}"#,
        r#"{"cmd":"fibre-product","left":"quot","right":"quot"}"#,
        r#"{"cmd":"compose-spans","first":"span_id_oct","second":"span_q"}"#,
        r#"{"cmd":"hs-roundtrip","span":"span_q"}"#,
        r#"{"cmd":"orbit-category","group":"d2"}"#,
        r#"{"cmd":"coeff-check","complex":"octagon","system":"rep_d2"}"#,
        r#"{"cmd":"bredon","complex":"octagon","system":"constZ_d2"}"#,
        r#"{"cmd":"bredon-oracle","complex":"octagon","system":"constZ_d2"}"#,
        r#"{"cmd":"rep-system","group":"d2","complex":"octagon"}"#,
    ];
    for text in commands {
        let command: Command = serde_json::from_str(text).unwrap();
        let report = run_command(&scenario, &command, &default_context())
            .unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(report.exit_code(), 0, "{text}");
    }
}

#[test]
fn compare_command_walks_a_two_step_tower() {
    let text = std::fs::read_to_string(fixture_path("z4_tower")).unwrap();
    let scenario = parse_scenario(&text, 64).unwrap();
    let command: Command = serde_json::from_str(
        r#"{"cmd":"compare","base_complex":"gon12","base_system":"constZ_z4",
            "path":[{"quotient":{"kernel":[0,2]}},{"quotient":{"kernel":[0,1]}}],
            "expect_complex":"triangle","expect_system":"constZ_e2","max_degree":2}"#,
    )
    .unwrap();
    let report = run_command(&scenario, &command, &default_context()).unwrap();
    assert_eq!(report.exit_code(), 0, "{}", report.render_human());
}

#[test]
fn fixed_subcomplex_command_reports_the_poles() {
    let text = std::fs::read_to_string(fixture_path("d2_circle")).unwrap();
    let scenario = parse_scenario(&text, 64).unwrap();
    let command: Command =
        serde_json::from_str(r#"{"cmd":"fixed","complex":"octagon","subgroup":[0,1]}"#).unwrap();
    let report = run_command(&scenario, &command, &default_context()).unwrap();
    let payload = &report.results[0];
    assert_eq!(payload["count"], 2);
}

#[test]
fn binary_exit_codes_follow_the_contract() {
    let fixture = fixture_path("d2_circle");
    // 0: success
    let out = run_binary(&[
        "--scenario",
        &fixture,
        "--command",
        r#"{"cmd":"ess-check","map":"quot"}"#,
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // 1: mathematical failure
    let out = run_binary(&[
        "--scenario",
        &fixture,
        "--command",
        r#"{"cmd":"coeff-check","complex":"octagon","system":"distinct_sigma"}"#,
    ]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");

    // 2: input errors (unknown command, unknown name, malformed scenario)
    let out = run_binary(&[
        "--scenario",
        &fixture,
        "--command",
        r#"{"cmd":"no-such-command"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let out = run_binary(&[
        "--scenario",
        &fixture,
        "--command",
        r#"{"cmd":"bredon","complex":"nope","system":"constZ_d2"}"#,
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn binary_reports_are_byte_identical_across_runs() {
    let fixture = fixture_path("d2_circle");
    let args = [
        "--scenario",
        fixture.as_str(),
        "--command",
        r#"{"cmd":"bredon-oracle","complex":"square","system":"rep_z2"}"#,
        "--format",
        "machine",
    ];
    let first = run_binary(&args);
    let second = run_binary(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn binary_reads_commands_from_files_and_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let command_path = dir.path().join("cmd.json");
    let output_path = dir.path().join("report.txt");
    std::fs::write(&command_path, r#"{"cmd":"subgroups","group":"d2"}"#).unwrap();
    let fixture = fixture_path("d2_circle");
    let out = run_binary(&[
        "--scenario",
        &fixture,
        "--command",
        &format!("@{}", command_path.display()),
        "--output",
        output_path.to_str().unwrap(),
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let written = std::fs::read_to_string(&output_path).unwrap();
    // 5 subgroups of the Klein group, one record each plus the header
    assert_eq!(written.lines().count(), 6);
}

#[test]
fn oracle_flag_forces_the_brute_force_pipeline() {
    let fixture = fixture_path("d2_circle");
    let args = |extra: &[&str]| {
        let mut v = vec![
            "--scenario".to_string(),
            fixture.clone(),
            "--command".to_string(),
            r#"{"cmd":"bredon","complex":"square","system":"constZ_z2"}"#.to_string(),
            "--format".to_string(),
            "machine".to_string(),
        ];
        v.extend(extra.iter().map(|s| s.to_string()));
        v
    };
    let plain = run_binary(&args(&[]).iter().map(String::as_str).collect::<Vec<_>>());
    let forced = run_binary(&args(&["--oracle"]).iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(plain.status.code(), Some(0));
    assert_eq!(forced.status.code(), Some(0));
    // same groups either way; records after the header line agree
    let tail = |o: &Output| {
        String::from_utf8_lossy(&o.stdout).lines().skip(1).map(String::from).collect::<Vec<_>>()
    };
    assert_eq!(tail(&plain), tail(&forced));
}

#[test]
fn max_group_order_bound_is_enforced() {
    let fixture = fixture_path("d2_circle");
    let out = run_binary(&[
        "--scenario",
        &fixture,
        "--command",
        r#"{"cmd":"subgroups","group":"d2"}"#,
        "--max-group-order",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}
