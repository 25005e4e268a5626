use std::path::PathBuf;
use std::process::{Command, Output};

use pardfs::io::parse_parent_array;
use pardfs_core::dfs::sequential_dfs;
use pardfs_core::load_graph;
use serde_json::Value;

fn pardfs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pardfs")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pardfs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn path_run_verifies() {
    let out = pardfs(&["dfs", "--gen", "path", "--n", "1000", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["verified"], true);
    assert_eq!(r["graph"]["n"], 1000);
    assert!(r["work_units"].as_u64().unwrap() > 0);
}

#[test]
fn complete_graph_gives_hamiltonian_path() {
    let out = pardfs(&["dfs", "--gen", "complete", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let parent: Vec<u64> = report(&out)["parent"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(parent.iter().filter(|&&p| p == 0).count(), 1);
    let mut children = [0; 5];
    for &p in &parent {
        children[p as usize] += 1;
    }
    assert!(children[1..].iter().all(|&c| c <= 1), "{parent:?}");
}

#[test]
fn sequential_mode_matches_oracle() {
    let g = scratch("seq.txt");
    std::fs::write(&g, "# small graph\n6 7\n1 2\n2 3\n3 1\n3 4\n4 5\n5 6\n6 4\n").unwrap();
    let p = scratch("seq.parent");
    let out = pardfs(&["dfs", "--input", g.to_str().unwrap(), "--root", "1", "--mode", "sequential", "--export-parent", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let got = parse_parent_array(&std::fs::read_to_string(&p).unwrap(), 6).unwrap();
    let graph = load_graph(6, &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 6), (6, 4)]).unwrap();
    assert_eq!(got, sequential_dfs(&graph, 0, None));
}

#[test]
fn report_file_and_dot_export() {
    let r = scratch("grid.json");
    let d = scratch("grid.dot");
    let out = pardfs(&[
        "dfs", "--gen", "grid", "--params", "w=20,h=30", "--cutoff", "16", "--verify", "full",
        "--report", r.to_str().unwrap(), "--export-dot", d.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(rep["verified"], true);
    assert!(rep["verifier"]["segment_checks"].as_u64().unwrap() > 0);
    assert!(std::fs::read_to_string(&d).unwrap().starts_with("graph"));
}

#[test]
fn reports_stable_across_runs_and_workers() {
    let strip = |o: &Output| {
        let mut v = report(o);
        v["wall_time_ms"] = Value::Null;
        v["config"]["workers"] = Value::Null;
        v.to_string()
    };
    let args = ["dfs", "--gen", "random-gnm-connected", "--n", "3000", "--m", "9000", "--seed", "5", "--cutoff", "32"];
    let a = pardfs(&args);
    let b = pardfs(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn exit_codes() {
    assert_eq!(pardfs(&["dfs", "--input", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(pardfs(&["dfs", "--gen", "path", "--n", "5", "--root", "9"]).status.code(), Some(2));
    assert_eq!(pardfs(&["dfs", "--gen", "nosuch", "--n", "5"]).status.code(), Some(2));
    assert_eq!(pardfs(&["dfs"]).status.code(), Some(2));
    let bad = scratch("bad.txt");
    std::fs::write(&bad, "3 2\n1 2\n").unwrap();
    assert_eq!(pardfs(&["dfs", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn disconnected_input_gives_forest() {
    let g = scratch("forest.txt");
    std::fs::write(&g, "5 2\n1 2\n4 5\n").unwrap();
    let out = pardfs(&["dfs", "--input", g.to_str().unwrap(), "--root", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["roots"], serde_json::json!([2, 3, 4]));
    assert_eq!(r["parent"], serde_json::json!([2, 0, 0, 0, 4]));
}

#[test]
fn gen_separator_and_scale() {
    let out = pardfs(&["gen", "--gen", "grid", "--params", "w=3,h=3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("9 12\n"));
    let out = pardfs(&["separator", "--gen", "random-gnm-connected", "--n", "4000", "--m", "12000"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["separates"], true);
    let out = pardfs(&["scale", "--sizes", "500", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["rows"].as_array().unwrap().len(), 1);
}
