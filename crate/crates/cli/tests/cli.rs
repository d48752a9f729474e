use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

mod support;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toggledyn")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).expect("schema file")).expect("schema is JSON")
}

fn assert_valid(schema_name: &str, v: &Value) {
    let errors = support::validate(&schema(schema_name), v);
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

#[test]
fn validator_rejects_bad_documents() {
    let s = schema("census.schema.json");
    assert!(!support::validate(&s, &serde_json::json!({ "graph": "x" })).is_empty());
    let bad_sizes = serde_json::json!({ "graph": "g", "op": "tpro", "word": "t1", "n": 2, "order": 1, "sizes": { "x": 1 }, "reps": [] });
    assert!(!support::validate(&s, &bad_sizes).is_empty());
    let step = schema("timeline-step.schema.json");
    assert!(!support::validate(&step, &serde_json::json!({ "t": 1 })).is_empty());
}

#[test]
fn census_toric_path4() {
    let o = run(&["census", "--graph", "path:4", "--op", "tpro"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sizes"], serde_json::json!({ "3": 8 }));
    assert_eq!(v["word"], "t1 t2 t3 t4");
    assert_valid("census.schema.json", &v);
}

#[test]
fn census_order_only() {
    let o = run(&["census", "--graph", "path:7", "--op", "pro", "--order-only", "--format", "table"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "3224590642072800");
    let o = run(&["census", "--graph", "path:7", "--op", "pro", "--order-only"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 3224590642072800u64);
    assert_valid("census.schema.json", &v);
}

#[test]
fn census_sampled_mode_is_deterministic() {
    let args = ["census", "--graph", "path:11", "--op", "tpro-beta", "--d", "3", "--sample", "5", "--seed", "9"];
    let a = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&run(&args)));
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_valid("census.schema.json", &v);
    // every sampled orbit size is a multiple of lcm(3, 8)
    for k in v["sizes_seen"].as_object().unwrap().keys() {
        assert_eq!(k.parse::<u64>().unwrap() % 24, 0);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["census", "--graph", "path:12", "--op", "tpro"])), 3);
    assert_eq!(code(&run(&["census", "--graph", "path:4", "--op", "nope"])), 2);
    assert_eq!(code(&run(&["census", "--graph", "banana", "--op", "tpro"])), 2);
    assert_eq!(code(&run(&["census", "--graph", "path:4"])), 2);
    assert_eq!(code(&run(&["verify", "no-such-suite", "--n", "4"])), 2);
    assert_eq!(code(&run(&["timeline", "--graph", "cycle:5", "--d", "2"])), 2);
    assert_eq!(code(&run(&["list"])), 0);
}

#[test]
fn verify_reports_validate() {
    let o = run(&["verify", "thm-main", "--n", "5", "--all-d"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checked"], 120);
    assert_valid("verify.schema.json", &v);

    let o = run(&["verify", "omega-counts", "--n", "6", "--d", "2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let fibers = v["instances"][0]["detail"]["fibers"].as_object().unwrap();
    assert!(fibers.values().all(|c| c == 48));
    assert_valid("verify.schema.json", &v);
}

#[test]
fn verify_fence_laws_table() {
    let o = run(&["verify", "fence-laws", "--n", "6", "--d", "3", "--seeds", "all", "--format", "table"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("fence-laws: 720 checked, 0 failed\n"));
}

#[test]
fn timeline_until_period_and_fence() {
    let o = run(&["timeline", "--n", "6", "--d", "3", "--labeling", "5,2,6,4,1,3", "--until-period", "--fence"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    // three small steps per time step over one period, then the summary
    assert_eq!(lines.len(), 18 * 3 + 1);
    for line in &lines[..lines.len() - 1] {
        assert_valid("timeline-step.schema.json", &serde_json::from_str(line).unwrap());
    }
    let summary: Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_valid("timeline-summary.schema.json", &summary);
    assert_eq!(summary["summary"]["period"], 18);
    assert_eq!(summary["summary"]["transversal"]["energy"], serde_json::json!([2, 1, 3]));
    assert_eq!(summary["summary"]["phi_image"]["energy"], serde_json::json!([1, 3, 2]));
}

#[test]
fn ascii_render_matches_golden() {
    let golden = include_str!("golden/fig6_ascii.txt");
    for _ in 0..2 {
        let o = run(&["timeline", "--labeling", "5,2,6,4,1,3", "--d", "3", "--render", "ascii", "--to", "6"]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), golden);
    }
}

#[test]
fn random_seed_is_reproducible() {
    let args = ["timeline", "--n", "7", "--d", "2", "--seed", "42", "--to", "3"];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    assert_ne!(a, stdout(&run(&["timeline", "--n", "7", "--d", "2", "--seed", "43", "--to", "3"])));
}

#[test]
fn svg_frames() {
    let dir = std::env::temp_dir().join(format!("toggledyn-svg-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let o = run(&["timeline", "--labeling", "3,1,2,4", "--d", "2", "--render", "svg", "--out-dir", d, "--to", "2"]);
    assert_eq!(code(&o), 0);
    let frames = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(frames, 3);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code(&run(&["timeline", "--labeling", "3,1,2,4", "--d", "2", "--render", "svg"])), 2);
}
