use std::io::Write;
use std::process::{Command, Output, Stdio};

use nearness::document::EXAMPLE_JSON;
use nearness::render::parse_report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nearness"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn approx_reports_lower_and_upper() {
    let o = run(&["approx", "--set", "R", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rep = parse_report(&stdout(&o)).unwrap();
    assert_eq!(rep.sets["upper"], ["o", "r", "t", "w"]);
    assert_eq!(rep.sets["lower"], ["r", "t"]);
}

#[test]
fn verify_ring_exit_codes() {
    assert_eq!(run(&["verify", "ring", "--carrier", "R"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "ring", "--carrier", "O"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "ring", "--carrier", "missing"]).status.code(), Some(2));
}

#[test]
fn stdin_input_is_accepted() {
    let o = run_stdin(&["--input", "-", "verify", "subring", "--carrier", "R", "--sub", "S"], EXAMPLE_JSON);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("subnearness ring : PASS"));
}

#[test]
fn malformed_json_exits_two() {
    let o = run_stdin(&["--input", "-", "verify", "ring", "--carrier", "R"], "{ not json");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("malformed JSON"));
}

#[test]
fn ragged_matrix_names_the_offending_field() {
    let mut doc: serde_json::Value = serde_json::from_str(EXAMPLE_JSON).unwrap();
    doc["operations"]["add"].as_array_mut().unwrap().pop();
    let o = run_stdin(&["--input", "-", "verify", "ring", "--carrier", "R"], &doc.to_string());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("operations.add"), "{}", stderr(&o));
}

#[test]
fn duplicate_object_is_rejected() {
    let mut doc: serde_json::Value = serde_json::from_str(EXAMPLE_JSON).unwrap();
    doc["objects"][1] = serde_json::json!("o");
    let o = run_stdin(&["--input", "-", "approx", "--set", "R"], &doc.to_string());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("duplicate"), "{}", stderr(&o));
}

#[test]
fn quotient_text_has_the_coset_grids() {
    let o = run(&["quotient", "--carrier", "R", "--sub", "S"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header = text.lines().find(|l| l.trim_start().starts_with("⊕ |")).unwrap();
    assert_eq!(header.split_whitespace().collect::<Vec<_>>(), ["⊕", "|", "r+S", "t+S", "w+S"]);
    assert!(text.lines().any(|l| l.trim_start().starts_with("⊙ |")));
    assert!(text.contains("deviation r+S members"));
}

#[test]
fn search_is_deterministic_for_a_seed() {
    let a = run(&["search", "--size", "2", "--seed", "7"]);
    let b = run(&["search", "--size", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn search_bounds_are_enforced() {
    assert_eq!(run(&["search", "--size", "6", "--seed", "1"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--size", "4", "--exhaustive"]).status.code(), Some(2));
}

#[test]
fn exhaustive_size_two_covers_every_table_pair() {
    let o = run(&["search", "--size", "2", "--exhaustive", "--format", "json"]);
    let rep = parse_report(&stdout(&o)).unwrap();
    let s = rep.search.unwrap();
    assert_eq!(s.table_pairs, 256);
    assert_eq!(s.feature_assignments, 2);
    assert!(s.found > 0);
}

#[test]
fn cross_document_homomorphism() {
    let z4 = data("z4.json");
    let z2 = data("z2.json");
    let o = run(&["--input", &z4, "verify", "hom", "--map", "reduce", "--to", &z2, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rep = parse_report(&stdout(&o)).unwrap();
    assert_eq!(rep.sets["kernel"], ["0", "2"]);
    assert_eq!(rep.sets["image"], ["0", "1"]);

    let o = run(&["iso-check", "--map", "reduce", "--from", &z4, "--to", &z2]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn unknown_map_exits_two() {
    assert_eq!(run(&["verify", "hom", "--map", "nope"]).status.code(), Some(2));
}

#[test]
fn powerset_bound_comes_from_the_environment() {
    let args = ["quotient", "--carrier", "R", "--sub", "S", "--powerset"];
    assert_eq!(run(&args).status.code(), Some(0));
    let o = bin().args(args).env("NEARNESS_POWERSET_MAX", "4").output().unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn collapse_map_is_not_a_homomorphism() {
    let o = run(&["verify", "hom", "--map", "collapse", "--carrier", "R", "--target", "R"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
}

#[test]
fn tampered_expected_table_is_reported() {
    let mut doc: serde_json::Value = serde_json::from_str(EXAMPLE_JSON).unwrap();
    doc["expected"]["tables"][0]["rows"][0][0] = serde_json::json!("o");
    let o = run_stdin(&["--input", "-", "verify", "ring", "--carrier", "R"], &doc.to_string());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("deviation R under +"), "{}", stdout(&o));
}
