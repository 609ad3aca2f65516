use std::path::Path;

use clap::Parser;
use serde_json::Value;
use untangle_cli::cli::{run, Cli};
use untangle_core::interchange::{read_session_log, InstanceDoc};
use untangle_core::{count_crossings, is_plane_drawing};

fn exec(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("untangle").chain(args.iter().copied())).unwrap();
    let mut out = Vec::new();
    let code = run(cli, &mut out).unwrap();
    (code, String::from_utf8(out).unwrap())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_untangle_verify_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    let redraw = dir.path().join("redraw.json");
    let moves = dir.path().join("moves.jsonl");

    let (code, out) = exec(&["--json", "construct", "--family", "chain", "--k", "3", "--s", "2", "--out", p(&inst)]);
    assert_eq!(code, 0);
    let summary: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(summary["n"], 15);

    let (code, _) = exec(&["untangle", "--instance", p(&inst), "--fix-face", "--out", p(&redraw), "--moves", p(&moves)]);
    assert_eq!(code, 0);
    let doc = InstanceDoc::parse(&std::fs::read_to_string(&redraw).unwrap()).unwrap();
    let drawing = doc.drawing.as_ref().unwrap();
    assert!(is_plane_drawing(&doc.graph, drawing));
    assert_eq!(count_crossings(&doc.graph, drawing), 0);

    let plan = read_session_log(&std::fs::read_to_string(&moves).unwrap()).unwrap();
    let original = InstanceDoc::parse(&std::fs::read_to_string(&inst).unwrap()).unwrap();
    let replayed = plan.apply_to(original.drawing.as_ref().unwrap()).unwrap();
    assert_eq!(&replayed, drawing);

    let (code, out) = exec(&["--json", "verify", "--instance", p(&inst), "--redraw", p(&redraw)]);
    assert_eq!(code, 0, "{out}");
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["pass"], true);
    assert_eq!(report["plane"], true);

    let (code, out) = exec(&["--json", "play-log", "--instance", p(&inst), "--log", p(&moves)]);
    assert_eq!(code, 0);
    let state: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(state["crossings"], 0);
    assert_eq!(state["score"]["solved"], true);
}

#[test]
fn verify_rejects_a_crossing_redrawing() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    exec(&["construct", "--family", "square", "--k", "3", "--out", p(&inst)]);
    // the tangled drawing itself is not plane
    let (code, out) = exec(&["verify", "--instance", p(&inst), "--redraw", p(&inst)]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
}

#[test]
fn bound_reports_both_methods() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.json");
    exec(&["construct", "--family", "chain", "--k", "3", "--s", "2", "--out", p(&inst)]);
    let (_, out) = exec(&["bound", "--instance", p(&inst), "--method", "persistence"]);
    let cert: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(cert["method"], "persistence");
    assert_eq!(cert["certified_moved_lower"], 4);
    let (_, out) = exec(&["bound", "--instance", p(&inst)]);
    let cert: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(cert["method"], "circle_lemma");
}

#[test]
fn lemma_check_passes_small_grid() {
    let (code, out) = exec(&["--json", "lemma-check", "--kmax", "3", "--smax", "3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["all_pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn construct_without_out_prints_document() {
    let (code, out) = exec(&["construct", "--family", "square", "--k", "4", "--style", "strip"]);
    assert_eq!(code, 0);
    let doc = InstanceDoc::parse(&out).unwrap();
    assert_eq!(doc.graph.vertex_count(), 16);
    assert!(doc.to_instance().is_some());
}

#[test]
fn argument_errors() {
    assert!(Cli::try_parse_from(["untangle", "construct", "--family", "cube", "--k", "3"]).is_err());
    let cli = Cli::try_parse_from(["untangle", "construct", "--family", "chain", "--k", "3"]).unwrap();
    assert!(run(cli, &mut Vec::new()).is_err());
    let cli = Cli::try_parse_from(["untangle", "bound", "--instance", "/nonexistent.json"]).unwrap();
    assert!(run(cli, &mut Vec::new()).is_err());
}

#[test]
fn nine_vertex_square_workflow() {
    let dir = tempfile::tempdir().unwrap();
    let h9 = dir.path().join("h9.json");
    let redraw = dir.path().join("redraw.json");
    exec(&["construct", "--family", "square", "--k", "3", "--out", p(&h9)]);

    let (code, out) = exec(&["lemma-check", "--kmax", "4", "--smax", "4"]);
    assert_eq!(code, 0);
    assert!(!out.contains("FAIL"));

    let (_, out) = exec(&["bound", "--instance", p(&h9)]);
    let cert: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(cert["certified_fixed_upper"], 7);

    let (code, out) = exec(&["--json", "untangle", "--instance", p(&h9), "--fix-face", "--out", p(&redraw)]);
    assert_eq!(code, 0);
    let summary: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(summary["crossings"], 0);
    assert!(summary["fixed"].as_u64().unwrap() >= 3);
    let doc = InstanceDoc::parse(&std::fs::read_to_string(&redraw).unwrap()).unwrap();
    assert_eq!(count_crossings(&doc.graph, doc.drawing.as_ref().unwrap()), 0);
}
