//! Decremental adjacency with "t distinct active neighbours" queries.
//!
//! Each vertex keeps a static, perfectly balanced counting tree over its
//! adjacency array. A leaf holds 1 while the neighbour in that slot is
//! active; every internal node holds the sum of its two children.

use alloc::vec::Vec;

use crate::meter::log_rounds;
use crate::{Error, Graph, Result, WorkDepthMeter};

/// Counting tree over a fixed array of `len` entries, all initially active.
#[derive(Clone, Debug)]
pub struct ActiveList {
    len: usize,
    cap: usize,
    count: Vec<u32>,
}

impl ActiveList {
    pub fn new(len: usize) -> Self {
        let cap = len.next_power_of_two().max(1);
        let mut count = vec![0u32; 2 * cap];
        for i in 0..len {
            count[cap + i] = 1;
        }
        for i in (1..cap).rev() {
            count[i] = count[2 * i] + count[2 * i + 1];
        }
        ActiveList { len, cap, count }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn active_count(&self) -> usize {
        self.count[1] as usize
    }

    pub fn is_active(&self, i: usize) -> bool {
        self.count[self.cap + i] == 1
    }

    /// Deactivate entry `i`; returns false if it already was inactive.
    pub fn deactivate(&mut self, i: usize) -> bool {
        let mut at = self.cap + i;
        if self.count[at] == 0 {
            return false;
        }
        while at >= 1 {
            self.count[at] -= 1;
            at /= 2;
        }
        true
    }

    /// Up to `t` active entries, leftmost first.
    pub fn query(&self, t: usize, out: &mut Vec<usize>) {
        self.collect(1, t.min(self.count[1] as usize), out);
    }

    fn collect(&self, node: usize, want: usize, out: &mut Vec<usize>) {
        if want == 0 {
            return;
        }
        if node >= self.cap {
            out.push(node - self.cap);
            return;
        }
        let left = (self.count[2 * node] as usize).min(want);
        self.collect(2 * node, left, out);
        self.collect(2 * node + 1, want - left, out);
    }

    /// Every internal count equals the sum of its children.
    pub fn sums_consistent(&self) -> bool {
        (1..self.cap).all(|i| self.count[i] == self.count[2 * i] + self.count[2 * i + 1])
            && (self.len..self.cap).all(|i| self.count[self.cap + i] == 0)
    }
}

/// Per-vertex [`ActiveList`]s over a graph's adjacency, kept consistent
/// with a global active flag per vertex.
#[derive(Clone, Debug)]
pub struct ActiveGraph<'g> {
    g: &'g Graph,
    lists: Vec<ActiveList>,
    /// For adjacency slot `s` of `v` pointing at `u`: the slot of `v` in `u`'s array.
    cross: Vec<u32>,
    active: Vec<bool>,
    log_n: u64,
}

impl<'g> ActiveGraph<'g> {
    /// All vertices start active. Needs at least two vertices.
    pub fn new(g: &'g Graph, meter: &mut WorkDepthMeter) -> Result<Self> {
        if g.n() < 2 {
            return Err(Error::TooFewVertices);
        }
        let mut edge_slots = vec![[u32::MAX; 2]; g.m()];
        let mut slot = 0usize;
        for v in 0..g.n() {
            for (_, e) in g.incident(v) {
                let side = if edge_slots[e][0] == u32::MAX { 0 } else { 1 };
                edge_slots[e][side] = slot as u32;
                slot += 1;
            }
        }
        let mut cross = vec![0u32; slot];
        for [a, b] in edge_slots {
            cross[a as usize] = b;
            cross[b as usize] = a;
        }
        let lists = (0..g.n()).map(|v| ActiveList::new(g.degree(v))).collect();
        let log_n = log_rounds(g.n());
        meter.work((g.n() + 2 * g.m()) as u64 * log_n);
        meter.rounds_add(log_n);
        Ok(ActiveGraph { g, lists, cross, active: vec![true; g.n()], log_n })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    /// Number of active neighbours of `v` (root count of its list).
    pub fn root_count(&self, v: usize) -> usize {
        self.lists[v].active_count()
    }

    pub fn list(&self, v: usize) -> &ActiveList {
        &self.lists[v]
    }

    /// Mark `vertices` inactive. They must be distinct and currently active;
    /// nothing changes if the check fails.
    pub fn make_inactive(&mut self, vertices: &[usize], meter: &mut WorkDepthMeter) -> Result<()> {
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.g.n() {
                return Err(Error::VertexOutOfRange { id: v, n: self.g.n() });
            }
            if !self.active[v] {
                // a repeat inside the batch shows up here after the first mark
                let repeated = vertices[..i].contains(&v);
                self.restore(&vertices[..i]);
                return Err(if repeated { Error::DuplicateVertex(v) } else { Error::AlreadyInactive(v) });
            }
            self.active[v] = false;
        }
        let mut touched = vertices.len();
        for &v in vertices {
            for s in self.g.slot_range(v) {
                let u = self.g.slot_target(s);
                let t = self.cross[s] as usize;
                let idx = t - self.g.slot_range(u).start;
                self.lists[u].deactivate(idx);
                touched += 1;
            }
        }
        meter.work(touched as u64 * self.log_n);
        meter.rounds_add(self.log_n);
        Ok(())
    }

    fn restore(&mut self, vertices: &[usize]) {
        for &v in vertices {
            self.active[v] = true;
        }
    }

    /// For each listed vertex, up to `t` distinct active neighbours.
    pub fn query_active(&self, vertices: &[usize], t: usize, meter: &mut WorkDepthMeter) -> Vec<Vec<usize>> {
        let mut work = 0u64;
        let out = vertices
            .iter()
            .map(|&v| {
                let mut idx = Vec::new();
                self.lists[v].query(t, &mut idx);
                work += (idx.len() as u64 + 1) * self.log_n;
                let base = self.g.slot_range(v).start;
                idx.into_iter().map(|i| self.g.slot_target(base + i)).collect()
            })
            .collect();
        meter.work(work);
        meter.rounds_add(self.log_n);
        out
    }

    /// Tree-sum and leaf-flag invariants over every list.
    pub fn consistent(&self) -> bool {
        (0..self.g.n()).all(|v| {
            let list = &self.lists[v];
            list.sums_consistent()
                && self
                    .g
                    .neighbors(v)
                    .enumerate()
                    .all(|(i, u)| list.is_active(i) == self.active[u])
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn star_root_counts() {
        let g = star(4);
        let ag = ActiveGraph::new(&g, &mut WorkDepthMeter::new()).unwrap();
        assert_eq!(ag.root_count(0), 4);
        assert!((1..5).all(|v| ag.root_count(v) == 1));
    }

    #[test]
    fn edgeless_counts_zero() {
        let g = Graph::from_edges(3, []).unwrap();
        let ag = ActiveGraph::new(&g, &mut WorkDepthMeter::new()).unwrap();
        assert!((0..3).all(|v| ag.root_count(v) == 0));
    }

    #[test]
    fn needs_two_vertices() {
        let g = Graph::from_edges(1, []).unwrap();
        assert_eq!(ActiveGraph::new(&g, &mut WorkDepthMeter::new()).err(), Some(Error::TooFewVertices));
    }

    #[test]
    fn p3_middle_inactive() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let mut m = WorkDepthMeter::new();
        let mut ag = ActiveGraph::new(&g, &mut m).unwrap();
        ag.make_inactive(&[1], &mut m).unwrap();
        let q = ag.query_active(&[0, 2], 5, &mut m);
        assert!(q[0].is_empty() && q[1].is_empty());
        assert!(ag.consistent());
    }

    #[test]
    fn all_inactive_in_one_batch() {
        let g = star(5);
        let mut m = WorkDepthMeter::new();
        let mut ag = ActiveGraph::new(&g, &mut m).unwrap();
        let all: Vec<usize> = (0..6).collect();
        ag.make_inactive(&all, &mut m).unwrap();
        assert!((0..6).all(|v| ag.root_count(v) == 0));
    }

    #[test]
    fn rejects_repeats_and_inactive() {
        let g = star(3);
        let mut m = WorkDepthMeter::new();
        let mut ag = ActiveGraph::new(&g, &mut m).unwrap();
        assert_eq!(ag.make_inactive(&[1, 1], &mut m), Err(Error::DuplicateVertex(1)));
        assert!(ag.is_active(1));
        ag.make_inactive(&[2], &mut m).unwrap();
        assert_eq!(ag.make_inactive(&[3, 2], &mut m), Err(Error::AlreadyInactive(2)));
        assert!(ag.is_active(3));
        assert!(ag.consistent());
    }

    #[test]
    fn star_query_three() {
        let g = star(5);
        let mut m = WorkDepthMeter::new();
        let ag = ActiveGraph::new(&g, &mut m).unwrap();
        let q = ag.query_active(&[0], 3, &mut m);
        assert_eq!(q[0], vec![1, 2, 3]);
    }

    #[test]
    fn list_descends_left_first() {
        let mut l = ActiveList::new(6);
        l.deactivate(0);
        l.deactivate(3);
        let mut out = Vec::new();
        l.query(3, &mut out);
        assert_eq!(out, vec![1, 2, 4]);
        assert!(l.sums_consistent());
        assert!(!l.deactivate(3));
    }
}
