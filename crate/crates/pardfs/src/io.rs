//! Text, DOT and JSON formats. Vertices are 1-based in every file.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use pardfs_core::components::CcLabeling;
use pardfs_core::forest::{Cluster, Fate, SegmentOracleState};
use pardfs_core::{load_graph, Graph, PathList};
use serde_json::{json, Value};

/// Parse the edge-list format: a header `n m`, then `m` lines `u v`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().context("missing header line \"n m\"")?;
    let (n, m) = pair(header).with_context(|| format!("line {hl}: bad header"))?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let (u, v) = pair(line).with_context(|| format!("line {ln}: expected \"u v\""))?;
        ensure!(u >= 1 && v >= 1, "line {ln}: vertices are 1-based");
        edges.push((u, v));
    }
    ensure!(edges.len() == m, "header announces {m} edges, found {}", edges.len());
    Ok(load_graph(n, &edges)?)
}

fn pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next().context("missing field")?.parse()?;
    let b = it.next().context("missing field")?.parse()?;
    if it.next().is_some() {
        bail!("trailing fields");
    }
    Ok((a, b))
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn format_graph(g: &Graph) -> String {
    let mut s = String::with_capacity(16 * (g.m() + 1));
    let _ = writeln!(s, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{} {}", u + 1, v + 1);
    }
    s
}

/// One `v parent(v)` line per vertex; roots have parent 0.
pub fn format_parent_array(parent: &[Option<usize>]) -> String {
    let mut s = String::with_capacity(12 * parent.len());
    for (v, p) in parent.iter().enumerate() {
        let _ = writeln!(s, "{} {}", v + 1, p.map_or(0, |p| p + 1));
    }
    s
}

pub fn parse_parent_array(text: &str, n: usize) -> Result<Vec<Option<usize>>> {
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let (v, p) = pair(line).with_context(|| format!("line {}", i + 1))?;
        ensure!((1..=n).contains(&v) && p <= n, "line {}: vertex out of range", i + 1);
        ensure!(!seen[v - 1], "line {}: vertex {v} listed twice", i + 1);
        seen[v - 1] = true;
        parent[v - 1] = p.checked_sub(1);
    }
    Ok(parent)
}

/// DOT drawing: tree edges solid and directed to the child, other edges
/// dashed.
pub fn format_dot(g: &Graph, parent: &[Option<usize>]) -> String {
    let mut s = String::from("graph dfs {\n  node [shape=circle];\n");
    for (v, p) in parent.iter().enumerate() {
        if p.is_none() {
            let _ = writeln!(s, "  {} [style=bold];", v + 1);
        }
    }
    for (u, v) in g.edges() {
        let tree = parent[v] == Some(u) || parent[u] == Some(v);
        if tree {
            let (a, b) = if parent[v] == Some(u) { (u, v) } else { (v, u) };
            let _ = writeln!(s, "  {} -- {} [dir=forward];", a + 1, b + 1);
        } else {
            let _ = writeln!(s, "  {} -- {} [style=dashed];", u + 1, v + 1);
        }
    }
    s.push_str("}\n");
    s
}

/// Paths as arrays of 1-based vertex ids, head first.
pub fn separator_json(paths: &[PathList]) -> Value {
    Value::Array(paths.iter().map(|p| json!(p.iter().map(|v| v + 1).collect::<Vec<_>>())).collect())
}

/// Component label per vertex, `null` for removed vertices.
pub fn cc_labels_json(cc: &CcLabeling) -> Value {
    json!(cc.labels().collect::<Vec<_>>())
}

fn cluster_json(c: Cluster) -> Value {
    match c {
        Cluster::Vertex(v) => json!({ "vertex": v + 1 }),
        Cluster::Edge(e) => json!({ "edge": e }),
    }
}

/// Levels, clusters, flags and augmentations of an oracle state.
pub fn oracle_dump(st: &SegmentOracleState<'_>) -> Value {
    let g = st.graph();
    let forest = st.forest();
    let edges: Vec<Value> = (0..g.m())
        .filter(|&e| forest.is_present(e))
        .map(|e| {
            let (u, v) = g.endpoints(e);
            json!({ "id": e, "u": u + 1, "v": v + 1, "level": forest.edge_level(e), "tree": forest.is_tree_edge(e) })
        })
        .collect();
    let clusters: Vec<Value> = st
        .rc()
        .clusters()
        .into_iter()
        .map(|c| {
            let fate = match c.fate {
                Fate::Rake(u) => json!({ "rake": u + 1 }),
                Fate::Compress(a, b) => json!({ "compress": [a + 1, b + 1] }),
                Fate::Finalize => json!("finalize"),
            };
            json!({
                "vertex": c.vertex + 1,
                "level": c.level,
                "fate": fate,
                "parent": c.parent.map(|p| p + 1),
                "children": c.children.into_iter().map(cluster_json).collect::<Vec<_>>(),
                "flag": c.flag,
                "low": c.low.map(|l| json!({ "v": l.v + 1, "x": l.x + 1, "depth": l.depth })),
            })
        })
        .collect();
    json!({
        "top_level": forest.top_level(),
        "segment": st.segment().iter().map(|&(v, d)| json!([v + 1, d])).collect::<Vec<_>>(),
        "edges": edges,
        "clusters": clusters,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = parse_graph("# triangle\n3 3\n1 2\n2 3\n\n3 1\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn malformed_graphs() {
        assert!(parse_graph("").is_err());
        assert!(parse_graph("3 2\n1 2\n").is_err());
        assert!(parse_graph("3 1\n0 2\n").is_err());
        assert!(parse_graph("3 1\n1 4\n").is_err());
        assert!(parse_graph("3 1\n2 2\n").is_err());
        assert!(parse_graph("3 1\n1 2 3\n").is_err());
    }

    #[test]
    fn parent_round_trip() {
        let p = vec![None, Some(0), Some(1), None];
        let text = format_parent_array(&p);
        assert_eq!(text, "1 0\n2 1\n3 2\n4 0\n");
        assert_eq!(parse_parent_array(&text, 4).unwrap(), p);
        assert!(parse_parent_array("1 0\n1 0\n", 2).is_err());
    }

    #[test]
    fn dot_marks_tree_edges() {
        let g = parse_graph("3 3\n1 2\n2 3\n1 3\n").unwrap();
        let d = format_dot(&g, &[None, Some(0), Some(1)]);
        assert!(d.contains("1 -- 2 [dir=forward]"));
        assert!(d.contains("2 -- 3 [dir=forward]"));
        assert!(d.contains("1 -- 3 [style=dashed]"));
    }
}
