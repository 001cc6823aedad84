//! Every JSON document the CLI can print validates against the shipped schema.

use graphcurv_cli::{run, Command, Format, Mode, RunConfig};
use jsonschema::JSONSchema;
use serde_json::Value;

fn schema() -> JSONSchema {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json");
    let text = std::fs::read_to_string(path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&value).expect("schema compiles")
}

fn config(input: &str, command: Command, mode: Mode) -> RunConfig {
    RunConfig { input: input.into(), command, format: Format::Json, seed: 3, samples: 10, mode }
}

fn assert_valid(schema: &JSONSchema, cfg: &RunConfig) {
    let out = run(cfg).unwrap_or_else(|e| panic!("{} {:?}: {e}", cfg.input, cfg.command));
    let doc: Value = serde_json::from_str(&out.text).unwrap();
    if let Err(errors) = schema.validate(&doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{} {:?} fails the schema:\n{}", cfg.input, cfg.command, msgs.join("\n"));
    };
}

#[test]
fn every_report_kind_validates() {
    let schema = schema();
    let inputs = [
        "path:3", "path:6", "star:4", "cycle:4", "cycle:5", "complete:4", "hypercube:3", "grid:2,3",
        "gnp:9,1/2",
    ];
    for input in inputs {
        for command in
            [Command::Gen, Command::Dist, Command::Curvature, Command::Verify, Command::Game, Command::Report]
        {
            assert_valid(&schema, &config(input, command, Mode::Exact));
        }
    }
    for input in ["path:3", "complete:5", "star:6", "gnp:20,1/3"] {
        assert_valid(&schema, &config(input, Command::Curvature, Mode::Float));
    }
    // Inconsistent system: the document is still printed.
    assert_valid(&schema, &config("complete:1", Command::Curvature, Mode::Exact));
    assert_valid(&schema, &config("complete:1", Command::Game, Mode::Exact));
}

#[test]
fn schema_rejects_malformed_documents() {
    let schema = schema();
    let out = run(&config("path:3", Command::Curvature, Mode::Exact)).unwrap();
    let mut doc: Value = serde_json::from_str(&out.text).unwrap();
    doc["bound_k"]["exact"] = Value::from("1.0");
    assert!(!schema.is_valid(&doc));
    let mut doc: Value = serde_json::from_str(&out.text).unwrap();
    doc.as_object_mut().unwrap().remove("warnings");
    assert!(!schema.is_valid(&doc));
    assert!(!schema.is_valid(&serde_json::json!({ "kind": "unknown" })));
}

#[test]
fn in_process_run_matches_exit_contract() {
    let out = run(&config("complete:1", Command::Curvature, Mode::Exact)).unwrap();
    assert_eq!(out.exit_code, 4);
    let err = run(&config("complete:1", Command::Verify, Mode::Exact)).err().unwrap();
    assert_eq!(err.exit_code(), 4);
    let out = run(&config("path:4", Command::Report, Mode::Exact)).unwrap();
    assert_eq!(out.exit_code, 0);
}
