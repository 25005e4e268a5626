use alloc::vec::Vec;
use core::fmt;

use crate::components::connected_components;
use crate::path::list_rank;
use crate::{Error, Graph, PathList, Result, WorkDepthMeter};

const NONE: u32 = u32::MAX;

/// A rooted tree inside `g` that can be extended to a DFS tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialSegment {
    root: usize,
    parent: Vec<u32>,
    depth: Vec<u32>,
    order: Vec<usize>,
}

impl InitialSegment {
    pub fn new(n: usize, root: usize) -> Result<Self> {
        if root >= n {
            return Err(Error::VertexOutOfRange { id: root, n });
        }
        let mut depth = vec![NONE; n];
        depth[root] = 0;
        Ok(InitialSegment { root, parent: vec![NONE; n], depth, order: vec![root] })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn contains(&self, v: usize) -> bool {
        self.depth[v] != NONE
    }

    pub fn depth(&self, v: usize) -> Option<u32> {
        (self.depth[v] != NONE).then_some(self.depth[v])
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NONE).then_some(self.parent[v] as usize)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Members in the order they joined.
    pub fn vertices(&self) -> &[usize] {
        &self.order
    }

    pub fn membership(&self) -> Vec<bool> {
        self.depth.iter().map(|&d| d != NONE).collect()
    }

    /// Hang `chain` below `y`: the head's parent is `y`, each later vertex
    /// hangs off its predecessor. Returns the new depths in chain order.
    pub fn attach_path(&mut self, g: &Graph, chain: &PathList, y: usize, meter: &mut WorkDepthMeter) -> Result<Vec<u32>> {
        let n = self.depth.len();
        if y >= n || !self.contains(y) {
            return Err(Error::MissingVertex(y));
        }
        let order = chain.to_vec();
        let Some(&first) = order.first() else {
            return Err(Error::EmptyPath);
        };
        let mut seen = Vec::with_capacity(order.len());
        for &v in &order {
            if v >= n {
                return Err(Error::VertexOutOfRange { id: v, n });
            }
            if self.contains(v) {
                return Err(Error::OverlappingPaths(v));
            }
            seen.push(v);
        }
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        if !g.has_edge(y, first) {
            return Err(Error::NotAdjacent(y, first));
        }
        for w in order.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::NotAdjacent(w[0], w[1]));
            }
        }
        meter.round(order.len() as u64);
        let ranks = list_rank(chain, &vec![1; chain.len()], meter)?;
        let base = self.depth[y];
        let mut slot_rank = vec![0u32; order.len()];
        for (s, &r) in ranks.iter().enumerate() {
            slot_rank[r as usize - 1] = s as u32;
        }
        let mut depths = Vec::with_capacity(order.len());
        let mut prev = y;
        for (i, &v) in order.iter().enumerate() {
            debug_assert_eq!(chain.slot_vertex(slot_rank[i] as usize), v);
            let d = base + ranks[slot_rank[i] as usize] as u32;
            self.depth[v] = d;
            self.parent[v] = prev as u32;
            self.order.push(v);
            depths.push(d);
            prev = v;
        }
        meter.round(order.len() as u64);
        Ok(depths)
    }
}

/// Why a tree or segment failed verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Defect {
    /// Root has a parent, or a non-root member has none.
    BadRoot(usize),
    /// Parent pointer to a non-member, a non-neighbour or a wrong depth.
    BadParent(usize),
    /// Member not reachable from the root along child pointers.
    Unreachable(usize),
    /// A vertex of the root's component outside the tree.
    NotSpanning(usize),
    /// Edge joining two incomparable tree vertices.
    CrossEdge(usize, usize),
    /// A component of `g − T′` touching two incomparable members.
    IncomparableAttachments(usize, usize),
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Defect::BadRoot(v) => write!(f, "vertex {v} breaks the root condition"),
            Defect::BadParent(v) => write!(f, "vertex {v} has an invalid parent"),
            Defect::Unreachable(v) => write!(f, "vertex {v} is not reachable from the root"),
            Defect::NotSpanning(v) => write!(f, "vertex {v} of the root's component is missing"),
            Defect::CrossEdge(u, v) => write!(f, "edge {u}-{v} joins incomparable vertices"),
            Defect::IncomparableAttachments(u, v) => {
                write!(f, "one component of the remainder touches incomparable {u} and {v}")
            }
        }
    }
}

/// Entry/exit times of the tree given by `parent` over `member`, from
/// `root`. Fails if some member is unreachable.
pub(crate) fn intervals(
    parent: &[u32],
    member: &[bool],
    root: usize,
    meter: &mut WorkDepthMeter,
) -> Result<(Vec<u32>, Vec<u32>), Defect> {
    let n = parent.len();
    let mut start = vec![0u32; n + 1];
    for v in 0..n {
        if member[v] && v != root {
            start[parent[v] as usize + 1] += 1;
        }
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut kids = vec![0u32; start[n] as usize];
    for v in 0..n {
        if member[v] && v != root {
            let p = parent[v] as usize;
            kids[fill[p] as usize] = v as u32;
            fill[p] += 1;
        }
    }
    let mut tin = vec![NONE; n];
    let mut tout = vec![NONE; n];
    let mut clock = 0;
    let mut stack = vec![(root as u32, start[root])];
    tin[root] = 0;
    while let Some(top) = stack.len().checked_sub(1) {
        let (v, next) = stack[top];
        let v = v as usize;
        if next < start[v + 1] {
            let c = kids[next as usize];
            stack[top].1 += 1;
            clock += 1;
            tin[c as usize] = clock;
            stack.push((c, start[c as usize]));
        } else {
            tout[v] = clock;
            stack.pop();
        }
    }
    meter.work(n as u64);
    meter.rounds_add(crate::meter::log_rounds(n.max(2)));
    match (0..n).find(|&v| member[v] && tin[v] == NONE) {
        Some(v) => Err(Defect::Unreachable(v)),
        None => Ok((tin, tout)),
    }
}

#[inline]
fn is_ancestor(tin: &[u32], tout: &[u32], a: usize, d: usize) -> bool {
    tin[a] <= tin[d] && tin[d] <= tout[a]
}

/// Check that `seg` is a tree in `g` and that every component of `g − T′`
/// attaches to members lying on one root-to-node path.
pub fn verify_initial_segment(g: &Graph, seg: &InitialSegment, meter: &mut WorkDepthMeter) -> Result<(), Defect> {
    let n = g.n();
    let member = seg.membership();
    let root = seg.root;
    if seg.parent[root] != NONE || seg.depth[root] != 0 {
        return Err(Defect::BadRoot(root));
    }
    for &v in &seg.order {
        if v == root {
            continue;
        }
        let p = seg.parent[v];
        if p == NONE {
            return Err(Defect::BadRoot(v));
        }
        let p = p as usize;
        if !member[p] || seg.depth[v] != seg.depth[p] + 1 || !g.has_edge(v, p) {
            return Err(Defect::BadParent(v));
        }
    }
    meter.round(seg.order.len() as u64);
    let (tin, tout) = intervals(&seg.parent, &member, root, meter)?;
    let cc = connected_components(g, Some(&member), meter);
    // deepest attachment per component, then every attachment must be an
    // ancestor of it
    let mut deepest = vec![NONE; cc.count()];
    for v in 0..n {
        let Some(l) = cc.label(v) else { continue };
        for x in g.neighbors(v) {
            if member[x] && (deepest[l] == NONE || seg.depth[x] > seg.depth[deepest[l] as usize]) {
                deepest[l] = x as u32;
            }
        }
    }
    for v in 0..n {
        let Some(l) = cc.label(v) else { continue };
        let low = deepest[l] as usize;
        for x in g.neighbors(v) {
            if member[x] && !is_ancestor(&tin, &tout, x, low) {
                return Err(Defect::IncomparableAttachments(x, low));
            }
        }
    }
    meter.round(2 * g.m() as u64 + n as u64);
    Ok(())
}
