use std::process::Command;

use tiltkit_cli::doc::{parse_str, Session};
use tiltkit_cli::{main_with, ReportDocument};

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tiltkit")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> (i32, ReportDocument) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, out, err) = run(&a);
    let rep = ReportDocument::from_json(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, rep)
}

#[test]
fn nakayama_example_passes() {
    let (code, rep) = json(&["example", "nakayama"]);
    assert_eq!(code, 0);
    assert!(rep.pass);
    assert_eq!(rep.payload.dims["algebra"], 20);
    assert_eq!(rep.payload.dims["X"], 4);
    assert_eq!(rep.payload.values["X"], "4/1/2/3");
    assert_eq!(rep.payload.values["theorem"], "theorem1");
    assert!(rep.checks.iter().all(|c| c.pass && c.witness.is_none()));
    assert!(rep.payload.flags.values().all(|f| *f));
}

#[test]
fn non_admissible_set_has_a_witness() {
    let (code, rep) = json(&["check-admissible", "--set", "0,1,2,4"]);
    assert_eq!(code, 1);
    let c = &rep.checks[0];
    assert!(!c.pass);
    assert!(c.witness.as_deref().unwrap().contains("(i, j, k)"));
    let (code, rep) = json(&["check-admissible", "--set", "-2,-1,0,1,2"]);
    assert_eq!(code, 1, "{rep:?}");
    let (code, _) = json(&["check-admissible", "--set", "0,1,2,3"]);
    assert_eq!(code, 0);
}

#[test]
fn hom_on_a2() {
    let (code, rep) = json(&["hom", "--a", "A2", "--m", "P1", "--n", "S2"]);
    assert_eq!(code, 0);
    assert_eq!(rep.payload.dims["hom"], 0);
    let (_, rep) = json(&["hom", "--a", "A2", "--m", "S2", "--n", "P1"]);
    assert_eq!(rep.payload.dims["hom"], 1);
}

#[test]
fn input_errors_exit_with_two() {
    let (code, _, err) = run(&["hom", "--a", "A2", "--m", "P7", "--n", "S2"]);
    assert_eq!(code, 2);
    assert!(err.contains("unresolved name"), "{err}");
    let (code, _, _) = run(&["hom", "--a", "/nonexistent.json", "--m", "P1", "--n", "S2"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["hom", "--a", "A2", "--m", "P1", "--n", "S2", "--field", "fp:4"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn hypothesis_failures_exit_with_one() {
    let (code, rep) = json(&["verify-thm2", "--a", "A2", "--from", "P2", "--to", "P1", "--sub", "P1[1]"]);
    assert_eq!(code, 1);
    let c = rep.checks.iter().find(|c| c.name == "hypotheses").unwrap();
    assert!(c.witness.as_deref().unwrap().starts_with("middle terms"));
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    for args in [
        vec!["example", "nakayama"],
        vec!["example", "a2-triangle"],
        vec!["check-admissible", "--set", "0,1,2,4"],
        vec!["orbit-yoneda", "--a", "nakayama4", "--x", "P1", "--functor", "rotation", "--set", "0,2"],
    ] {
        let mut a = args.clone();
        a.push("--json");
        let (_, first, _) = run(&a);
        let (_, second, _) = run(&a);
        assert_eq!(first, second);
        let rep = ReportDocument::from_json(&first).unwrap();
        assert_eq!(rep.to_json() + "\n", first);
        assert_eq!(ReportDocument::from_json(&rep.to_json()).unwrap(), rep);
    }
}

#[test]
fn timing_only_on_request() {
    let (_, rep) = json(&["example", "a2-triangle"]);
    assert!(rep.timing_us.is_none());
    let (_, rep) = json(&["example", "a2-triangle", "--timing"]);
    assert!(rep.timing_us.is_some());
}

#[test]
fn commands_on_builtin_documents() {
    let (code, rep) = json(&["verify-thm1", "--a", "A2", "--complex", "ar", "--sub", "P1", "--field", "fp:3"]);
    assert_eq!(code, 0);
    assert_eq!(rep.payload.dims["left ideal"], 0);
    assert_eq!(rep.payload.rings["right"].field, "fp:3");
    let (code, rep) = json(&["nu-pipeline", "--a", "nakayama4", "--p", "P1+P3", "--y", "Y", "--max-steps", "2"]);
    assert_eq!(code, 0);
    assert_eq!(rep.payload.dims["X"], 4);
    let (code, rep) = json(&["end-ring", "--a", "A2", "--m", "P1+S1"]);
    assert_eq!(code, 0);
    assert_eq!(rep.payload.dims["ring"], 3);
    let (code, rep) = json(&["ideal", "--a", "A2", "--kind", "J", "--sub", "P1", "--m", "P1", "--n", "P1"]);
    assert_eq!(code, 0);
    assert_eq!(rep.payload.dims["J"], 0);
    let (code, rep) = json(&["approx", "--a", "nakayama4", "--side", "right", "--m", "Y", "--sub", "P1+P3"]);
    assert_eq!(code, 0, "{rep:?}");
    let (code, rep) = json(&["orbit-verify", "--a", "A2", "--from", "P2", "--to", "P1", "--sub", "P1", "--set", "0,1"]);
    assert_eq!(code, 0, "{rep:?}");
    assert_eq!(rep.payload.values["theorem"], "corollary");
    assert_eq!(rep.payload.dims["J"], rep.payload.dims["J_D"]);
    let (code, rep) = json(&["orbit-yoneda", "--a", "A2", "--x", "P1+P2", "--multiples", "1", "--window", "2"]);
    assert_eq!(code, 0, "{rep:?}");
    assert!(rep.payload.values["phi"].contains("truncated"));
}

#[test]
fn text_output_ends_with_the_result() {
    let (code, out, _) = run(&["example", "a2-orbit"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("result: PASS"), "{out}");
}

const DOC: &str = r#"{
  "schema_version": 1,
  "field": "fp:5",
  "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]},
  "modules": {
    "Z": {"dims": [0, 0]},
    "M": {"dims": [1, 1], "arrows": {"a": [[1]]}},
    "H": {"dims": [1, 1], "arrows": {"a": [["1/2"]]}}
  }
}"#;

#[test]
fn documents_parse_and_validate() {
    let s = Session::new(parse_str(DOC).unwrap(), None).unwrap();
    assert!(s.modules["Z"].is_zero());
    assert!(s.obj("Z").unwrap().is_empty());
    assert_eq!(s.obj("M").unwrap(), s.obj("P1").unwrap());

    let bad_rel = DOC.replace("\"modules\"", "\"relations\": [\"a a\"], \"modules\"");
    assert!(Session::new(parse_str(&bad_rel).unwrap(), None).is_err());
    let bad_shape = DOC.replace("[[1]]", "[[1, 0]]");
    let e = Session::new(parse_str(&bad_shape).unwrap(), None).err().unwrap().to_string();
    assert!(e.contains("modules.M.arrows.a"), "{e}");
    let bad_lit = DOC.replace("\"1/2\"", "\"1/5\"");
    assert!(Session::new(parse_str(&bad_lit).unwrap(), None).is_err());
    assert!(parse_str("{\"schema_version\": 1").is_err());
}

#[test]
fn documents_from_files() {
    let dir = std::env::temp_dir().join(format!("tiltkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("a2.json");
    std::fs::write(&path, DOC).unwrap();
    let p = path.to_str().unwrap();
    let out = main_with(["hom", "--doc", p, "--m", "H", "--n", "M", "--json"].map(String::from).to_vec());
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rep = ReportDocument::from_json(&out.stdout).unwrap();
    assert_eq!(rep.payload.dims["hom"], 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
