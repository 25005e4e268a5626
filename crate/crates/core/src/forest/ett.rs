//! Euler tour trees on an arena of treap nodes with parent pointers.
//!
//! A tree is stored as the cyclic sequence of its Euler tour: one node per
//! vertex plus two arc nodes per edge. Vertex nodes can carry a mark (used
//! for "has non-tree edges here"), arc nodes too (used for "tree edge of
//! exactly this level"); subtree counts of both kinds allow jumping to
//! marked nodes.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub(crate) const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
struct Node {
    l: u32,
    r: u32,
    p: u32,
    prio: u32,
    size: u32,
    vcnt: u32,
    vmarks: u32,
    amarks: u32,
    item: u32,
    vertex: bool,
    mark: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Ett {
    nodes: Vec<Node>,
    free: Vec<u32>,
    rng: ChaCha8Rng,
}

impl Ett {
    pub fn new(seed: u64) -> Self {
        Ett { nodes: Vec::new(), free: Vec::new(), rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn alloc(&mut self, item: usize, vertex: bool) -> u32 {
        let node = Node {
            l: NIL,
            r: NIL,
            p: NIL,
            prio: self.rng.next_u32(),
            size: 1,
            vcnt: vertex as u32,
            vmarks: 0,
            amarks: 0,
            item: item as u32,
            vertex,
            mark: false,
        };
        match self.free.pop() {
            Some(x) => {
                self.nodes[x as usize] = node;
                x
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    fn release(&mut self, x: u32) {
        self.free.push(x);
    }

    #[inline]
    fn size(&self, x: u32) -> u32 {
        if x == NIL {
            0
        } else {
            self.nodes[x as usize].size
        }
    }

    fn pull(&mut self, x: u32) {
        let Node { l, r, vertex, mark, .. } = self.nodes[x as usize];
        let mut size = 1;
        let mut vcnt = vertex as u32;
        let mut vmarks = (vertex && mark) as u32;
        let mut amarks = (!vertex && mark) as u32;
        for c in [l, r] {
            if c != NIL {
                let n = &self.nodes[c as usize];
                size += n.size;
                vcnt += n.vcnt;
                vmarks += n.vmarks;
                amarks += n.amarks;
            }
        }
        let n = &mut self.nodes[x as usize];
        n.size = size;
        n.vcnt = vcnt;
        n.vmarks = vmarks;
        n.amarks = amarks;
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].prio > self.nodes[b as usize].prio {
            let r = self.nodes[a as usize].r;
            let m = self.merge(r, b);
            self.nodes[a as usize].r = m;
            self.nodes[m as usize].p = a;
            self.pull(a);
            a
        } else {
            let l = self.nodes[b as usize].l;
            let m = self.merge(a, l);
            self.nodes[b as usize].l = m;
            self.nodes[m as usize].p = b;
            self.pull(b);
            b
        }
    }

    fn join(&mut self, a: u32, b: u32) -> u32 {
        let m = self.merge(a, b);
        if m != NIL {
            self.nodes[m as usize].p = NIL;
        }
        m
    }

    /// First `k` nodes of `t`, and the rest.
    fn split_rec(&mut self, t: u32, k: u32) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        let l = self.nodes[t as usize].l;
        let ls = self.size(l);
        if k <= ls {
            let (a, b) = self.split_rec(l, k);
            self.nodes[t as usize].l = b;
            if b != NIL {
                self.nodes[b as usize].p = t;
            }
            self.pull(t);
            (a, t)
        } else {
            let r = self.nodes[t as usize].r;
            let (a, b) = self.split_rec(r, k - ls - 1);
            self.nodes[t as usize].r = a;
            if a != NIL {
                self.nodes[a as usize].p = t;
            }
            self.pull(t);
            (t, b)
        }
    }

    fn split(&mut self, t: u32, k: u32) -> (u32, u32) {
        let (a, b) = self.split_rec(t, k);
        for x in [a, b] {
            if x != NIL {
                self.nodes[x as usize].p = NIL;
            }
        }
        (a, b)
    }

    pub fn root(&self, mut x: u32) -> u32 {
        while self.nodes[x as usize].p != NIL {
            x = self.nodes[x as usize].p;
        }
        x
    }

    fn index(&self, mut x: u32) -> u32 {
        let mut i = self.size(self.nodes[x as usize].l);
        while self.nodes[x as usize].p != NIL {
            let p = self.nodes[x as usize].p;
            if self.nodes[p as usize].r == x {
                i += self.size(self.nodes[p as usize].l) + 1;
            }
            x = p;
        }
        i
    }

    /// Rotate the tour of `x`'s tree so that it starts at `x`.
    fn reroot(&mut self, x: u32) -> u32 {
        let r = self.root(x);
        let k = self.index(x);
        let (a, b) = self.split(r, k);
        self.join(b, a)
    }

    /// Join the trees of vertex nodes `xu` and `xv` by a new edge; returns
    /// the arc nodes `(u→v, v→u)`.
    pub fn link(&mut self, xu: u32, xv: u32, edge: usize) -> (u32, u32) {
        let ru = self.reroot(xu);
        let rv = self.reroot(xv);
        let a1 = self.alloc(edge, false);
        let a2 = self.alloc(edge, false);
        let t = self.join(ru, a1);
        let t = self.join(t, rv);
        self.join(t, a2);
        (a1, a2)
    }

    /// Remove the edge with arc nodes `a1`, `a2`, splitting its tree in two.
    pub fn cut(&mut self, a1: u32, a2: u32) {
        let r = self.root(a1);
        let (mut i1, mut i2) = (self.index(a1), self.index(a2));
        if i1 > i2 {
            core::mem::swap(&mut i1, &mut i2);
        }
        let (left, rest) = self.split(r, i1);
        let (_, rest) = self.split(rest, 1);
        let (_middle, rest) = self.split(rest, i2 - i1 - 1);
        let (_, right) = self.split(rest, 1);
        self.join(left, right);
        self.release(a1);
        self.release(a2);
    }

    pub fn set_mark(&mut self, x: u32, mark: bool) {
        if self.nodes[x as usize].mark == mark {
            return;
        }
        self.nodes[x as usize].mark = mark;
        let mut at = x;
        while at != NIL {
            self.pull(at);
            at = self.nodes[at as usize].p;
        }
    }

    pub fn mark(&self, x: u32) -> bool {
        self.nodes[x as usize].mark
    }

    /// Number of vertices in the tree rooted at `root`.
    pub fn vcount(&self, root: u32) -> usize {
        self.nodes[root as usize].vcnt as usize
    }

    /// Items of marked nodes of one kind under `root`, up to `limit`.
    pub fn marked(&self, root: u32, vertex: bool, limit: usize, out: &mut Vec<usize>) {
        let mut stack = alloc::vec![root];
        while let Some(x) = stack.pop() {
            if out.len() >= limit {
                return;
            }
            let n = &self.nodes[x as usize];
            let count = if vertex { n.vmarks } else { n.amarks };
            if count == 0 {
                continue;
            }
            if n.mark && n.vertex == vertex {
                out.push(n.item as usize);
            }
            for c in [n.r, n.l] {
                if c != NIL {
                    stack.push(c);
                }
            }
        }
    }

    /// All vertex items under `root`.
    pub fn vertices(&self, root: u32, out: &mut Vec<usize>) {
        let mut stack = alloc::vec![root];
        while let Some(x) = stack.pop() {
            let n = &self.nodes[x as usize];
            if n.vertex {
                out.push(n.item as usize);
            }
            for c in [n.r, n.l] {
                if c != NIL && self.nodes[c as usize].vcnt > 0 {
                    stack.push(c);
                }
            }
        }
    }

    /// Items of the tour under `root`, in order, tagged with vertex-ness.
    pub fn tour(&self, root: u32) -> Vec<(bool, usize)> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let mut at = root;
        while at != NIL || !stack.is_empty() {
            while at != NIL {
                stack.push(at);
                at = self.nodes[at as usize].l;
            }
            let x = stack.pop().unwrap();
            out.push((self.nodes[x as usize].vertex, self.nodes[x as usize].item as usize));
            at = self.nodes[x as usize].r;
        }
        out
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.nodes.len() - self.free.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verts(t: &Ett, x: u32) -> Vec<usize> {
        let mut v = Vec::new();
        t.vertices(t.root(x), &mut v);
        v.sort_unstable();
        v
    }

    #[test]
    fn link_cut_roundtrip() {
        let mut t = Ett::new(1);
        let x: Vec<u32> = (0..5).map(|v| t.alloc(v, true)).collect();
        let e01 = t.link(x[0], x[1], 0);
        let _e12 = t.link(x[1], x[2], 1);
        let e34 = t.link(x[3], x[4], 2);
        let _e24 = t.link(x[2], x[4], 3);
        assert_eq!(t.root(x[0]), t.root(x[3]));
        assert_eq!(t.vcount(t.root(x[0])), 5);
        assert_eq!(t.tour(t.root(x[0])).len(), 5 + 8);
        t.cut(e01.0, e01.1);
        assert_eq!(verts(&t, x[0]), vec![0]);
        assert_eq!(verts(&t, x[1]), vec![1, 2, 3, 4]);
        t.cut(e34.1, e34.0);
        assert_eq!(verts(&t, x[3]), vec![3]);
        assert_eq!(verts(&t, x[4]), vec![1, 2, 4]);
        assert_eq!(t.len(), 5 + 4);
    }

    #[test]
    fn marks_are_counted() {
        let mut t = Ett::new(2);
        let x: Vec<u32> = (0..4).map(|v| t.alloc(v, true)).collect();
        let a = t.link(x[0], x[1], 7);
        t.link(x[1], x[2], 8);
        t.set_mark(x[2], true);
        t.set_mark(a.0, true);
        let mut out = Vec::new();
        t.marked(t.root(x[0]), true, 10, &mut out);
        assert_eq!(out, vec![2]);
        out.clear();
        t.marked(t.root(x[0]), false, 10, &mut out);
        assert_eq!(out, vec![7]);
        out.clear();
        t.marked(t.root(x[3]), true, 10, &mut out);
        assert!(out.is_empty());
    }
}
