use alloc::vec::Vec;

use super::segment::{intervals, Defect};
use crate::{Graph, WorkDepthMeter};

const NONE: u32 = u32::MAX;

/// Stack-based DFS from `root` over the vertices with `live[v]` (all when
/// `None`). Neighbours are explored in adjacency order.
pub fn sequential_dfs(g: &Graph, root: usize, live: Option<&[bool]>) -> Vec<Option<usize>> {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    if root >= n || live.is_some_and(|l| !l[root]) {
        return parent;
    }
    seen[root] = true;
    let mut stack = vec![(root, 0usize)];
    while let Some(top) = stack.len().checked_sub(1) {
        let (v, i) = stack[top];
        match g.neighbor_at(v, i) {
            Some(w) => {
                stack[top].1 += 1;
                if !seen[w] && live.is_none_or(|l| l[w]) {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push((w, 0));
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    parent
}

/// Check that `parent` is a spanning tree of the component of `root` and
/// that every edge of that component joins an ancestor and a descendant.
/// Vertices outside the component must have no parent and are ignored.
pub fn verify_dfs_tree(g: &Graph, parent: &[Option<usize>], root: usize) -> Result<(), Defect> {
    let n = g.n();
    if parent.len() != n || root >= n {
        return Err(Defect::BadRoot(root));
    }
    if parent[root].is_some() {
        return Err(Defect::BadRoot(root));
    }
    // component of the root, independent of the tree
    let mut comp = vec![false; n];
    comp[root] = true;
    let mut queue = vec![root];
    while let Some(v) = queue.pop() {
        for w in g.neighbors(v) {
            if !comp[w] {
                comp[w] = true;
                queue.push(w);
            }
        }
    }
    let mut p32 = vec![NONE; n];
    for v in 0..n {
        match parent[v] {
            Some(_) if !comp[v] => return Err(Defect::BadParent(v)),
            Some(p) => {
                if p >= n || !comp[p] || !g.has_edge(v, p) {
                    return Err(Defect::BadParent(v));
                }
                p32[v] = p as u32;
            }
            None if comp[v] && v != root => return Err(Defect::NotSpanning(v)),
            None => {}
        }
    }
    let (tin, tout) = intervals(&p32, &comp, root, &mut WorkDepthMeter::new())?;
    for (u, v) in g.edges() {
        if !comp[u] {
            continue;
        }
        let comparable = (tin[u] <= tin[v] && tin[v] <= tout[u]) || (tin[v] <= tin[u] && tin[u] <= tout[v]);
        if !comparable {
            return Err(Defect::CrossEdge(u, v));
        }
    }
    Ok(())
}
