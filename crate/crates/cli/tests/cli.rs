//! End-to-end tests driving the compiled binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_o1p"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

const K4: &str = r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#;
const K4_MINUS_E: &str = r#"{"n":4,"edges":[[0,2],[0,3],[1,2],[1,3],[2,3]]}"#;
const C4: &str = r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}"#;
const C5: &str = r#"{"n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#;
const BASE: &str = r#"{"n":5,"edges":[[0,2],[0,3],[1,2],[1,3],[2,3],[0,4],[1,4]]}"#;
const K5: &str = r#"{"n":5,"edges":[[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#;

#[test]
fn chi_reports_class_and_reason() {
    let dir = tempfile::tempdir().unwrap();
    for (doc, expected) in [
        (C5, "chi=3 class=2 (odd cycle)"),
        (K4, "chi=3 class=1"),
        (BASE, "chi=4 class=2 (class P)"),
    ] {
        let file = write(dir.path(), "g.json", doc);
        let out = run(&["chi", file.to_str().unwrap()]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), expected);
    }
}

#[test]
fn chi_json_carries_a_valid_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k4.json", K4);
    let out = run(&["chi", "--json", "--witness", file.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["chi"], 3);
    assert_eq!(v["class"], 1);
    assert_eq!(v["reason"], serde_json::Value::Null);
    assert_eq!(v["coloring"].as_array().unwrap().len(), 6);
}

#[test]
fn non_embeddable_graphs_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k5.json", K5);
    let out = run(&["chi", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not outer-1-planar"));
    let out = run(&["embed", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreadable_and_malformed_inputs_exit_with_code_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["chi", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let bad = write(dir.path(), "bad.json", r#"{"n":2,"edges":[[0,5]]}"#);
    let out = run(&["chi", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn edge_lists_are_accepted_as_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "tri.txt", "# triangle\n3 3\n0 1\n1 2\n0 2\n");
    let out = run(&["chi", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "chi=3 class=2 (odd cycle)");
}

#[test]
fn a_supplied_order_overrides_the_search_and_is_checked() {
    let dir = tempfile::tempdir().unwrap();
    let ordered = write(
        dir.path(),
        "c4.json",
        r#"{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]],"order":[0,2,1,3]}"#,
    );
    let out = run(&["chi", ordered.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "chi=2 class=1");
    let crowded = write(
        dir.path(),
        "crowded.json",
        r#"{"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,5],[0,5],[0,2],[0,3],[0,4],[1,3],[1,4],[1,5],[2,4]],"order":[0,1,2,3,4,5]}"#,
    );
    let out = run(&["chi", crowded.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn every_color_output_passes_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (name, doc) in [("k4e", K4_MINUS_E), ("base", BASE), ("c4", C4)] {
        let graph = write(dir.path(), &format!("{name}.json"), doc);
        let out = run(&["color", graph.to_str().unwrap()]);
        assert!(out.status.success());
        let colors = write(dir.path(), &format!("{name}.colors"), &stdout(&out));
        let check = run(&["verify", graph.to_str().unwrap(), colors.to_str().unwrap()]);
        assert!(check.status.success(), "{}", stderr(&check));
    }
}

#[test]
fn cycles_color_alternately() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "c4.json", C4);
    let out = run(&["color", file.to_str().unwrap()]);
    let triples: Vec<[usize; 3]> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(triples.len(), 4);
    assert!(triples.iter().all(|t| t[2] == 1 || t[2] == 2));
}

#[test]
fn improper_colorings_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "tri.json",
        r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#,
    );
    let good = write(dir.path(), "good.colors", "[[0,1,1],[1,2,2],[0,2,3]]");
    let out = run(&["verify", graph.to_str().unwrap(), good.to_str().unwrap()]);
    assert!(out.status.success());
    let bad = write(dir.path(), "bad.colors", "[[0,1,1],[1,2,1],[0,2,3]]");
    let out = run(&["verify", graph.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("share a vertex"));
}

#[test]
fn embed_reports_minimum_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.json", K4);
    let out = run(&["embed", k4.to_str().unwrap()]);
    assert!(stdout(&out).contains("crossings=1 optimal=true"));
    let c6 = write(dir.path(), "c6.txt", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n");
    let out = run(&["embed", c6.to_str().unwrap()]);
    assert!(stdout(&out).contains("crossings=0 optimal=true"));
}

#[test]
fn classp_prints_certificates_and_refusals() {
    let dir = tempfile::tempdir().unwrap();
    let base = write(dir.path(), "base.json", BASE);
    let out = run(&["classp", base.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("member"));
    let c4 = write(dir.path(), "c4.json", C4);
    let out = run(&["classp", c4.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("not a member"));
}

#[test]
fn gen_is_deterministic_and_echoes_the_seed() {
    let first = run(&["gen", "--seed", "7", "--n", "9"]);
    let second = run(&["gen", "--seed", "7", "--n", "9"]);
    assert_eq!(stdout(&first), stdout(&second));
    assert!(stdout(&first).contains("\"comment\":\"seed=7\""));
    let third = run(&["gen", "--seed", "8", "--n", "9"]);
    assert_ne!(stdout(&first), stdout(&third));
}

#[test]
fn generated_documents_feed_back_into_the_solver() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gen", "--seed", "11", "--n", "8"]);
    let doc = write(dir.path(), "gen.json", &stdout(&out));
    let chi = run(&["chi", doc.to_str().unwrap()]);
    assert!(chi.status.success());
    assert!(stdout(&chi).starts_with("chi="));
}

#[test]
fn generated_pasted_graphs_are_recognized() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gen", "--class-p", "--seed", "3", "--ops", "4", "--n", "12"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("seed=3"));
    let doc = write(dir.path(), "p.json", &stdout(&out));
    let rec = run(&["classp", doc.to_str().unwrap()]);
    assert!(stdout(&rec).starts_with("member"));
    let chi = run(&["chi", doc.to_str().unwrap()]);
    assert_eq!(stdout(&chi).trim(), "chi=4 class=2 (class P)");
}

#[test]
fn dot_output_mentions_every_edge() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "k4.json", K4);
    let out = run(&["color", "--dot", file.to_str().unwrap()]);
    let text = stdout(&out);
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches(" -- ").count(), 6);
}

#[test]
fn sweep_matches_the_oracle_and_reports_the_known_exception() {
    let out = run(&["sweep", "--max-n", "5"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("0 mismatches"));
    assert!(text.contains("K4"));
}
