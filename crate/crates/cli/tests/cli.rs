use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_linlay"))
}

/// A scratch directory unique to the test.
fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("linlay-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn k6_mixed_number_prints_two() {
    let d = scratch("k6");
    let g = d.join("k6.json");
    assert!(run(&["generate", "--family", "k6", "--out", s(&g)]).status.success());
    let o = run(&["solve", "--graph", s(&g), "--minimize", "mn"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");
    let o = run(&["solve", "--graph", s(&g), "--stacks", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "infeasible");
}

#[test]
fn four_queue_transform_then_validate() {
    let d = scratch("thm5");
    let (g, l, t) = (d.join("g.json"), d.join("l.json"), d.join("t.json"));
    let gen = run(&[
        "generate", "--family", "random", "--stacks", "1", "--queues", "1", "--separated", "--seed", "11",
        "--out", s(&g), "--layout-out", s(&l),
    ]);
    assert!(gen.status.success());
    assert!(run(&["transform", "--op", "thm5", "--layout", s(&l), "--out", s(&t)]).status.success());
    let o = run(&["validate", "--layout", s(&t), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["valid"], true);
    assert_eq!(report["separated"], true);
    assert_eq!(report["signature"][0], 0);
    assert!(report["signature"][1].as_u64().unwrap() <= 4);
}

#[test]
fn invalid_layout_exits_one_with_capped_report() {
    let d = scratch("invalid");
    let l = d.join("bad.json");
    // K10 on one stack page in identity order: C(10,4) = 210 crossings.
    let edges: Vec<[usize; 2]> = (0..10).flat_map(|a| (a + 1..10).map(move |b| [a, b])).collect();
    let layout = serde_json::json!({ "order": (0..10).collect::<Vec<_>>(), "pages": [{ "kind": "stack", "edges": edges }] });
    std::fs::write(&l, layout.to_string()).unwrap();
    let o = run(&["validate", "--layout", s(&l), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["valid"], false);
    assert!(report["violation_count"].as_u64().unwrap() > 100);
    assert_eq!(report["violations"].as_array().unwrap().len(), 100);
    assert_eq!(run(&["render", "--layout", s(&l), "--out", s(&d.join("x.svg"))]).status.code(), Some(1));
    assert_eq!(run(&["render", "--layout", s(&l), "--force", "--out", s(&d.join("x.svg"))]).status.code(), Some(0));
}

#[test]
fn missing_edges_against_a_graph_file() {
    let d = scratch("missing");
    let (g, l) = (d.join("g.json"), d.join("l.json"));
    std::fs::write(&g, r#"{"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}"#).unwrap();
    std::fs::write(&l, r#"{"order": [0, 1, 2], "pages": [{"kind": "queue", "edges": [[0, 1], [1, 2]]}]}"#).unwrap();
    let o = run(&["validate", "--layout", s(&l), "--graph", s(&g)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("missing_edge"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["validate", "--layout", "/nonexistent/l.json"]).status.code(), Some(2));
    let d = scratch("usage");
    let l = d.join("l.json");
    std::fs::write(&l, "{not json").unwrap();
    assert_eq!(run(&["validate", "--layout", s(&l)]).status.code(), Some(2));
    std::fs::write(&l, r#"{"order": [0, 1], "pages": [{"kind": "queue", "edges": [[0, 1]]}]}"#).unwrap();
    let o = run(&["subdivide", "--pipeline", "5stack", "--layout", s(&l)]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["transform", "--op", "riffle", "--layout", s(&l)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--spec"));
}

#[test]
fn environment_caps_the_solver() {
    let d = scratch("cap");
    let g = d.join("g.json");
    assert!(run(&["generate", "--family", "kmn", "--m", "4", "--n", "4", "--out", s(&g)]).status.success());
    let o = bin()
        .args(["solve", "--graph", s(&g), "--minimize", "sn"])
        .env("LINLAY_MAX_VERTICES", "6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("8"));
    let o = bin()
        .args(["solve", "--graph", s(&g), "--minimize", "sn", "--max-vertices", "8"])
        .env("LINLAY_MAX_VERTICES", "6")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn subdivide_writes_record_and_layout() {
    let d = scratch("subdivide");
    let (g, l, out, rec) = (d.join("g.json"), d.join("l.json"), d.join("d.json"), d.join("rec.json"));
    assert!(run(&["generate", "--family", "random", "--stacks", "2", "--queues", "2", "--n-a", "9", "--n-b", "0",
        "--seed", "3", "--out", s(&g), "--layout-out", s(&l)]).status.success());
    let o = run(&["subdivide", "--pipeline", "3stack", "--layout", s(&l), "--out-layout", s(&out), "--out-record", s(&rec)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["signature"][1], 0);
    assert!(summary["signature"][0].as_u64().unwrap() <= 3);
    let record: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert!(record["paths"].as_object().unwrap().keys().all(|k| k.contains(',')));
    assert_eq!(run(&["validate", "--layout", s(&out)]).status.code(), Some(0));
}

#[test]
fn same_permutation_and_riffle_ops() {
    let d = scratch("ops");
    let (g, l, sp, out) = (d.join("g.json"), d.join("l.json"), d.join("sp.json"), d.join("o.json"));
    assert!(run(&["generate", "--family", "kmn", "--out", s(&g), "--layout-out", s(&l)]).status.success());
    let o = run(&["transform", "--op", "same-perm", "--layout", s(&l), "--oracle", "exact", "--out", s(&sp)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["validate", "--layout", s(&sp)]).status.code(), Some(0));

    let q = d.join("q.json");
    assert!(run(&["generate", "--family", "random", "--stacks", "0", "--queues", "2", "--n-a", "6", "--n-b", "0",
        "--seed", "1", "--out", s(&g), "--layout-out", s(&q)]).status.success());
    let layout: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&q).unwrap()).unwrap();
    let order: Vec<u64> = layout["order"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    let (a, b) = order.split_at(3);
    let target: Vec<u64> = b.iter().chain(a).copied().collect();
    let spec = d.join("spec.json");
    std::fs::write(&spec, serde_json::json!({ "parts": [a, b], "target_order": target }).to_string()).unwrap();
    let o = run(&["transform", "--op", "riffle", "--layout", s(&q), "--spec", s(&spec), "--out", s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["validate", "--layout", s(&out)]).status.code(), Some(0));
}

#[test]
fn rendering_is_deterministic() {
    let d = scratch("render");
    let (g, l) = (d.join("g.json"), d.join("l.json"));
    assert!(run(&["generate", "--family", "challenge", "--k", "4", "--out", s(&g), "--layout-out", s(&l)]).status.success());
    let a = run(&["render", "--layout", s(&l), "--style", "grid"]);
    let b = run(&["render", "--layout", s(&l), "--style", "grid"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("<svg"));
    assert_eq!(stdout(&a).matches("<circle").count(), 46);
}
