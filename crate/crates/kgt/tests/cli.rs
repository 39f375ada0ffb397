//! Exit codes and outputs of the `kgt` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use kgt::documents::GraphDocument;
use kgt::fock::FockMatrices;
use kgt::report::{CaseStatus, ReportDocument};

fn documents() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("documents")
}

fn doc(name: &str) -> String {
    documents().join(name).to_string_lossy().into_owned()
}

fn kgt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgt")).args(args).env_remove("KGT_SEED").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_accepts_fixtures() {
    for name in ["f1.json", "f2.json"] {
        let o = kgt(&["validate", &doc(name)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stdout(&o).starts_with("valid "));
    }
    assert_eq!(code(&kgt(&["validate", "fixture:F1"])), 0);
}

#[test]
fn dangling_endpoint_exits_2() {
    let o = kgt(&["validate", &doc("dangling-endpoint.json")]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("MalformedSkeleton"), "{}", stderr(&o));
}

#[test]
fn swapped_square_exits_3_with_the_pair() {
    let o = kgt(&["validate", &doc("swapped-square.json")]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("(e, f)"), "{}", stderr(&o));
}

#[test]
fn parse_errors_name_line_and_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"k\": 1,\n  \"vertices\": [\"v\"],\n  \"edges\": [],\n  \"colour\": 2\n}\n").unwrap();
    let o = kgt(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("bad.json:5:"), "{err}");
    assert!(err.contains("colour"), "{err}");
    std::fs::write(&bad, "{\"k\": 1,").unwrap();
    assert_eq!(code(&kgt(&["validate", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&kgt(&["validate", dir.path().join("missing.json").to_str().unwrap()])), 2);
}

#[test]
fn check_all_passes_on_the_quarter_turn_rotation() {
    let o = kgt(&["check", &doc("f1.json"), &doc("rotation-quarter-turn.json"), "--suite", "all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("34 passed, 0 failed, 0 skipped\n"), "{}", stdout(&o));
}

#[test]
fn single_check_machine_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = kgt(&[
        "check",
        &doc("f1.json"),
        &doc("rotation-one-radian.json"),
        "--suite",
        "psi-model",
        "--format",
        "machine",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let report: ReportDocument = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.schema, "kgt-report/1");
    assert_eq!(report.cases.len(), 1);
    assert_eq!(report.cases[0].id, "psi-model");
    assert_eq!(report.cases[0].status, CaseStatus::Pass);
}

#[test]
fn unknown_selector_exits_4() {
    let o = kgt(&["check", &doc("f1.json"), "--suite", "no-such-check"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("no-such-check"));
    assert_eq!(code(&kgt(&["check", &doc("f1.json"), "--suite", "x-*,"])), 4);
}

#[test]
fn usage_errors_exit_4_and_help_exits_0() {
    assert_eq!(code(&kgt(&[])), 4);
    assert_eq!(code(&kgt(&["frobnicate"])), 4);
    assert_eq!(code(&kgt(&["check", "--format", "yaml", &doc("f1.json")])), 4);
    assert_eq!(code(&kgt(&["check"])), 4);
    let o = kgt(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("validate"));
    assert_eq!(code(&kgt(&["--version"])), 0);
}

#[test]
fn failing_check_exits_1_and_replays() {
    let args = ["check", &doc("f1.json"), &doc("f1-table.json"), "--suite", "cocycle-identity"];
    let o = kgt(&args);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    let text = stdout(&o);
    let witness = text.lines().find_map(|l| l.strip_prefix("  witness: ")).expect("witness line");
    let replay = text.lines().find_map(|l| l.strip_prefix("  replay: kgt ")).expect("replay line");
    let again = kgt(&replay.split(' ').collect::<Vec<_>>());
    assert_eq!(code(&again), 1);
    assert!(stdout(&again).contains(witness));
}

#[test]
fn table_cocycle_passes_within_its_cap() {
    let o = kgt(&[
        "check",
        &doc("f1.json"),
        &doc("f1-table.json"),
        "--cap",
        "1",
        "--slack",
        "0",
        "--truncation",
        "1",
        "--depth",
        "1",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn cocycle_that_fails_at_load_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind":"table","entries":[["f","e","1/4 turn"]],"cap":[2,2]}"#).unwrap();
    let o = kgt(&["check", &doc("f1.json"), bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("cocycle identity fails"), "{}", stderr(&o));
}

#[test]
fn seed_defaults_to_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_kgt"))
        .args(["check", &doc("f1.json"), "--suite", "square-perturbation", "--format", "machine"])
        .env("KGT_SEED", "77")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let report: ReportDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.config.seed, 77);
    assert_eq!(report.cases[0].seed, 77);
}

#[test]
fn battery_instances_replay_by_name() {
    let o = kgt(&["check", "--battery", "--graphs", "1", "--cocycles-per-graph", "1", "--suite", "cocycle-identity", "--format", "machine"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: ReportDocument = serde_json::from_slice(&o.stdout).unwrap();
    let random = report.cases.iter().find(|c| c.instance == "random-0-0").expect("random instance");
    let replay: Vec<&str> = random.replay.strip_prefix("kgt ").unwrap().split(' ').collect();
    let again = kgt(&[replay.as_slice(), &["--format", "machine"]].concat());
    let rerun: ReportDocument = serde_json::from_slice(&again.stdout).unwrap();
    assert_eq!(rerun.cases.len(), 1);
    assert_eq!(rerun.cases[0].instance, "random-0-0");
    assert_eq!(rerun.cases[0].seed, random.seed);
    assert_eq!(rerun.cases[0].cases, random.cases);
}

#[test]
fn fock_y_without_depth_is_a_usage_error() {
    let o = kgt(&["fock", &doc("f1.json"), "--system", "Y", "--N", "1"]);
    assert_eq!(code(&o), 4);
    assert!(stderr(&o).contains("--D"));
}

#[test]
fn fock_zero_truncation_emits_the_vertex_diagonal() {
    let o = kgt(&["fock", &doc("f2.json"), "--system", "X", "--N", "0", "--emit", "matrices"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let m: FockMatrices = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(m.dim, 2);
    assert_eq!(m.basis.len(), 2);
    assert_eq!(m.generators.len(), 2);
    for (v, g) in m.generators.iter().enumerate() {
        for (i, row) in g.matrix.iter().enumerate() {
            for (j, z) in row.iter().enumerate() {
                let want = if i == v && j == v { [1.0, 0.0] } else { [0.0, 0.0] };
                assert_eq!(*z, want, "{} at ({i}, {j})", g.name);
            }
        }
    }
}

#[test]
fn fock_relations_report_the_rotation_phase() {
    let o = kgt(&["fock", &doc("f1.json"), &doc("rotation-one-radian.json"), "--system", "X", "--N", "2,2", "--emit", "relations"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("expected phase 1 rad"), "{text}");
    let arg = 1.0 / std::f64::consts::TAU;
    assert!(text.contains(&format!("arg {arg:.12} turn")), "{text}");
    assert!(text.contains("PASS cuntz-krieger"));
    assert!(text.contains("PASS commutation-relations"));
}

#[test]
fn fock_y_relations_include_the_covariance_identity() {
    let o = kgt(&["fock", &doc("f1.json"), &doc("rotation-quarter-turn.json"), "--system", "Y", "--N", "1", "--D", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS cp-identity"));
    assert!(stdout(&o).contains("PASS surjectivity"));
}

fn graph_at(path: &Path) -> GraphDocument {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn cartesian_product_of_f2_with_itself() {
    let dir = tempfile::tempdir().unwrap();
    let (g, c) = (dir.path().join("g.json"), dir.path().join("c.json"));
    let o = kgt(&[
        "build",
        "--op",
        "cartesian",
        "--graph",
        &doc("f2.json"),
        "--graph",
        &doc("f2.json"),
        "--cocycle",
        &doc("f2-coboundary.json"),
        "--cocycle",
        &doc("f2-coboundary.json"),
        "--out-graph",
        g.to_str().unwrap(),
        "--out-cocycle",
        c.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(graph_at(&g).vertices.len(), 4);
    assert_eq!(code(&kgt(&["validate", g.to_str().unwrap()])), 0);
    let o = kgt(&["check", g.to_str().unwrap(), c.to_str().unwrap(), "--suite", "cocycle-identity,x-*,fock-*"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn skew_product_by_z2() {
    let o = kgt(&["build", "--op", "skew", "--graph", &doc("f2.json"), "--group-order", "2", "--labels", "a=1,b=1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let g: GraphDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(g.vertices.len(), 4);
    assert!(stderr(&o).contains("--out-cocycle"));
    let o = kgt(&["build", "--op", "skew", "--graph", &doc("f2.json"), "--group-order", "2", "--labels", "a=1"]);
    assert_eq!(code(&o), 4);
}

#[test]
fn crossed_product_by_the_swap_passes_check() {
    let dir = tempfile::tempdir().unwrap();
    let (g, c) = (dir.path().join("g.json"), dir.path().join("c.json"));
    let o = kgt(&[
        "build",
        "--op",
        "crossed",
        "--graph",
        &doc("f2.json"),
        "--vertex-map",
        "u=v,v=u",
        "--edge-map",
        "a=b,b=a",
        "--cap",
        "2",
        "--omega",
        "1 rad",
        "--out-graph",
        g.to_str().unwrap(),
        "--out-cocycle",
        c.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(code(&kgt(&["validate", g.to_str().unwrap()])), 0);
    let o = kgt(&["check", g.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn crossed_product_rejects_a_non_automorphism() {
    let o = kgt(&["build", "--op", "crossed", "--graph", &doc("f2.json"), "--vertex-map", "u=v,v=u", "--edge-map", "a=a,b=b"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("endpoints"), "{}", stderr(&o));
}

#[test]
fn list_names_every_check() {
    let o = kgt(&["list"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), kgt_core::verify::REGISTRY.len());
}
