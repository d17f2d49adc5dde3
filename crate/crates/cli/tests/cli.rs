//! End-to-end tests of the `ccsys` binary: exit-code contract, file
//! round-trips, and agreement between command routes.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use cc_systems::axioms::classify;
use cc_systems::enumeration::random_digraph;
use cc_systems::from_points;
use cc_systems::solver::import_dimacs;
use cc_systems::system::{parse_system, serialize_system, PartialTripleSystem};
use cc_systems::OrientedTriple;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ccsys"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    use std::io::Write;
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn exit(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

/// Regular pentagon, counterclockwise; exercises the float coordinate route.
fn pentagon_system() -> PartialTripleSystem {
    let pts: Vec<(f64, f64)> = (0..5)
        .map(|i| {
            let angle = std::f64::consts::TAU * i as f64 / 5.0;
            (angle.cos(), angle.sin())
        })
        .collect();
    from_points(&pts).unwrap()
}

fn transitivity_violator() -> PartialTripleSystem {
    let mut s = PartialTripleSystem::new(5);
    for (a, b, c) in [(4, 3, 0), (4, 3, 1), (4, 3, 2), (4, 0, 1), (4, 1, 2), (4, 2, 0)] {
        s = s.assign(OrientedTriple::new(a, b, c), true).unwrap();
    }
    for (a, b, c) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        s = s.assign(OrientedTriple::new(a, b, c), true).unwrap();
    }
    s
}

const VORTEX_TOURNAMENT: &str = "vertices 4\n0 1\n1 2\n2 0\n3 0\n3 1\n3 2\n";
const TRANSITIVE_5: &str = "vertices 5\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

#[test]
fn check_pentagon_is_cc() {
    let path = tmp("pentagon.tri");
    fs::write(&path, serialize_system(&pentagon_system())).unwrap();
    let out = run(&["check", path.to_str().unwrap(), "--class", "cc"]);
    assert_eq!(exit(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("class cc: holds"));
}

#[test]
fn check_reports_transitivity_witnesses_and_exits_1() {
    let path = tmp("violator.tri");
    fs::write(&path, serialize_system(&transitivity_violator())).unwrap();
    let out = run(&[
        "check",
        path.to_str().unwrap(),
        "--class",
        "pre-cc",
        "--witnesses",
    ]);
    assert_eq!(exit(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("A5 t="), "missing witness line:\n{text}");
    assert!(text.contains("class pre-cc: fails"));
}

#[test]
fn check_rejects_malformed_sign_with_line_number() {
    let out = run_stdin(&["check", "-"], "points 3\n0 1 2 x\n");
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("line 2"));
}

#[test]
fn check_rejects_incomplete_systems() {
    let out = run_stdin(&["check", "-"], "points 4\n0 1 2 +\n");
    assert_eq!(exit(&out), 2);
    assert!(stderr(&out).contains("incomplete"));
}

#[test]
fn check_json_lines_shape() {
    let out = run_stdin(&["check", "-", "--format", "json-lines"], "points 3\n0 1 2 -\n");
    assert_eq!(exit(&out), 0);
    let text = stdout(&out);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with('{') && first.ends_with('}'));
    assert!(first.contains("\"holds\":true"));
}

#[test]
fn extend_empty_system_writes_verifiable_witness() {
    let input = tmp("empty5.tri");
    fs::write(&input, "points 5\n").unwrap();
    let witness_path = tmp("witness5.tri");
    let out = run(&[
        "extend",
        input.to_str().unwrap(),
        "--target",
        "pre-cc",
        "--out",
        witness_path.to_str().unwrap(),
    ]);
    assert_eq!(exit(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("extendable"));
    let witness = parse_system(&fs::read_to_string(&witness_path).unwrap()).unwrap();
    assert!(witness.is_complete());
    assert!(classify(&witness).unwrap().is_pre_cc);
}

#[test]
fn extend_vortex_apex_instance_fails_for_cc() {
    // Route the vortex tournament through `digraph to-triples`, then extend.
    let graph_path = tmp("vortex.dg");
    fs::write(&graph_path, VORTEX_TOURNAMENT).unwrap();
    let apex_path = tmp("vortex-apex.tri");
    let out = run(&[
        "digraph",
        "to-triples",
        graph_path.to_str().unwrap(),
        "--out",
        apex_path.to_str().unwrap(),
    ]);
    assert_eq!(exit(&out), 0);
    let out = run(&["extend", apex_path.to_str().unwrap(), "--target", "cc"]);
    assert_eq!(exit(&out), 1);
    assert!(stdout(&out).contains("unextendable"));
}

#[test]
fn extend_emit_cnf_round_trips() {
    let input = tmp("partial.tri");
    fs::write(&input, "points 4\n0 1 2 +\n1 2 3 -\n").unwrap();
    let cnf_path = tmp("partial.cnf");
    let out = run(&[
        "extend",
        input.to_str().unwrap(),
        "--target",
        "cc",
        "--emit-cnf",
        cnf_path.to_str().unwrap(),
    ]);
    assert_eq!(exit(&out), 0);
    let imported = import_dimacs(&fs::read_to_string(&cnf_path).unwrap()).unwrap();
    let expected = cc_systems::solver::encode(
        &parse_system(&fs::read_to_string(&input).unwrap()).unwrap(),
        cc_systems::Target::Cc,
    );
    assert_eq!(imported.clause_multiset(), expected.clause_multiset());
}

#[test]
fn extend_decision_limit_exits_3() {
    let out = run_stdin(
        &["extend", "-", "--target", "pre-cc", "--max-decisions", "0"],
        "points 5\n",
    );
    assert_eq!(exit(&out), 3);
    assert!(stdout(&out).contains("inconclusive"));
}

#[test]
fn extend_is_deterministic() {
    let a = run_stdin(&["extend", "-", "--target", "cc"], "points 5\n0 1 2 +\n");
    let b = run_stdin(&["extend", "-", "--target", "cc"], "points 5\n0 1 2 +\n");
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(exit(&a), exit(&b));
}

#[test]
fn digraph_vortices_exit_codes() {
    let out = run_stdin(&["digraph", "vortices", "-"], TRANSITIVE_5);
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).contains("vortices: 0"));

    let out = run_stdin(&["digraph", "vortices", "-"], VORTEX_TOURNAMENT);
    assert_eq!(exit(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("dominating vortex apex=3"));
    assert!(text.contains("vortices: 1"));
}

#[test]
fn digraph_vortices_rejects_two_cycles_and_partial_graphs() {
    let out = run_stdin(&["digraph", "vortices", "-"], "vertices 3\n0 1\n1 0\n");
    assert_eq!(exit(&out), 2);
    let out = run_stdin(&["digraph", "vortices", "-"], "vertices 3\n0 1\n");
    assert_eq!(exit(&out), 2);
}

#[test]
fn digraph_complete_decides_both_ways() {
    let out = run_stdin(&["digraph", "complete", "-"], "vertices 3\n0 1\n");
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).contains("yes"));

    let out = run_stdin(&["digraph", "complete", "-"], VORTEX_TOURNAMENT);
    assert_eq!(exit(&out), 1);
    assert!(stdout(&out).contains("no"));
}

#[test]
fn digraph_lift_produces_a_cc_system() {
    let path = tmp("trans4.dg");
    fs::write(&path, "vertices 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let out = run(&["digraph", "lift", path.to_str().unwrap()]);
    assert_eq!(exit(&out), 0, "stderr: {}", stderr(&out));
    let lifted = parse_system(&stdout(&out)).unwrap();
    assert_eq!(lifted.n(), 5);
    assert!(classify(&lifted).unwrap().is_cc);
}

#[test]
fn digraph_lift_rejects_vortex_input_with_witness() {
    let out = run_stdin(&["digraph", "lift", "-"], VORTEX_TOURNAMENT);
    assert_eq!(exit(&out), 1);
    assert!(stderr(&out).contains("dominating vortex apex=3"));
}

#[test]
fn digraph_lift_requires_full_tournament() {
    let out = run_stdin(&["digraph", "lift", "-"], "vertices 4\n0 1\n");
    assert_eq!(exit(&out), 2);
}

#[test]
fn to_triples_then_extend_matches_complete_on_random_digraphs() {
    for seed in 0..20u64 {
        let n = 4 + (seed % 2) as usize;
        let g = random_digraph(n, 0.6, 40_000 + seed);
        let graph_path = tmp(&format!("rand-{seed}.dg"));
        fs::write(&graph_path, g.serialize()).unwrap();

        let complete = run(&["digraph", "complete", graph_path.to_str().unwrap()]);
        let apex_path = tmp(&format!("rand-{seed}.tri"));
        let to_triples = run(&[
            "digraph",
            "to-triples",
            graph_path.to_str().unwrap(),
            "--out",
            apex_path.to_str().unwrap(),
        ]);
        assert_eq!(exit(&to_triples), 0);
        let extend = run(&["extend", apex_path.to_str().unwrap(), "--target", "cc"]);
        assert_eq!(
            exit(&complete),
            exit(&extend),
            "routes disagree on seed {seed}: {g:?}"
        );
    }
}

#[test]
fn census_small_values_and_range_check() {
    let out = run(&["census", "3"]);
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).contains("total 2\n"));
    assert!(stdout(&out).contains("cc 2\n"));

    let out = run(&["census", "4", "--jobs", "2"]);
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).contains("cc 14\n"));
    assert!(stdout(&out).contains("pre-cc 16\n"));

    let out = run(&["census", "7"]);
    assert_eq!(exit(&out), 2);

    let out = run(&["census", "5", "--format", "json-lines"]);
    assert_eq!(exit(&out), 0);
    assert!(stdout(&out).contains("\"pre_cc\":384"));
    assert!(stdout(&out).contains("\"chirotope\":384"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["check"]);
    assert_eq!(exit(&out), 2);
    let out = run(&["extend", "-", "--target", "nonsense"]);
    assert_eq!(exit(&out), 2);
}
