use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::ett::{Ett, NIL};
use crate::meter::log_rounds;
use crate::mix::derive_seed;
use crate::{Error, Graph, Result, WorkDepthMeter};

const FIRST_BATCH: usize = 4;

/// Edges removed from and added to the spanning forest by a deletion batch.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ForestChange {
    pub removed_tree_edges: Vec<usize>,
    pub replacement_edges: Vec<usize>,
}

/// Batch-decremental maximal spanning forest with edge levels.
///
/// Level `top = ceil(log2 n)` holds the whole forest; the forest at level
/// `i` holds the tree edges of level at most `i` and has components of at
/// most `2^i` vertices. A non-tree edge of level `i` joins two vertices that
/// are connected at level `i`.
#[derive(Clone, Debug)]
pub struct LevelForest<'g> {
    g: &'g Graph,
    top: usize,
    ett: Vec<Ett>,
    vnode: Vec<Vec<u32>>,
    level: Vec<u8>,
    tree: Vec<bool>,
    present: Vec<bool>,
    arcs: Vec<Vec<(u32, u32)>>,
    buckets: Vec<Vec<(u8, Vec<u32>)>>,
    slot: Vec<[u32; 2]>,
    alive: Vec<bool>,
}

impl<'g> LevelForest<'g> {
    /// Spanning forest of `g` minus the `removed` vertices.
    pub fn new(g: &'g Graph, removed: Option<&[bool]>, seed: u64, meter: &mut WorkDepthMeter) -> Self {
        let n = g.n();
        let m = g.m();
        let top = log_rounds(n.max(1)) as usize;
        let alive: Vec<bool> = (0..n).map(|v| removed.is_none_or(|r| !r[v])).collect();
        let mut f = LevelForest {
            g,
            top,
            ett: (0..=top).map(|i| Ett::new(derive_seed(seed, i as u64))).collect(),
            vnode: (0..=top).map(|_| Vec::new()).collect(),
            level: vec![top as u8; m],
            tree: vec![false; m],
            present: vec![false; m],
            arcs: vec![Vec::new(); m],
            buckets: vec![Vec::new(); n],
            slot: vec![[0; 2]; m],
            alive,
        };
        f.vnode[top] = vec![NIL; n];
        let mut uf: Vec<u32> = (0..n as u32).collect();
        for (e, (u, v)) in g.edges().enumerate() {
            if !f.alive[u] || !f.alive[v] {
                continue;
            }
            f.present[e] = true;
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            if a != b {
                uf[a] = b as u32;
                f.tree[e] = true;
                f.link_at(e, top);
            } else {
                f.bucket_add(e, top);
            }
        }
        let lg = log_rounds(n.max(2));
        meter.work((n + m) as u64 * lg);
        meter.rounds_add(lg * lg);
        f
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn top_level(&self) -> usize {
        self.top
    }

    pub fn is_present(&self, e: usize) -> bool {
        self.present[e]
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.present[e] && self.tree[e]
    }

    pub fn edge_level(&self, e: usize) -> usize {
        self.level[e] as usize
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v]
    }

    /// Tree edges of the top-level forest, ascending.
    pub fn tree_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.present.len()).filter(|&e| self.is_tree_edge(e))
    }

    fn vnode_at(&mut self, lvl: usize, v: usize) -> u32 {
        if self.vnode[lvl].is_empty() {
            self.vnode[lvl] = vec![NIL; self.g.n()];
        }
        if self.vnode[lvl][v] == NIL {
            self.vnode[lvl][v] = self.ett[lvl].alloc(v, true);
        }
        self.vnode[lvl][v]
    }

    fn node(&self, lvl: usize, v: usize) -> u32 {
        self.vnode[lvl].get(v).copied().unwrap_or(NIL)
    }

    /// Identity of `v`'s tree at level `lvl`.
    fn key(&self, lvl: usize, v: usize) -> u64 {
        match self.node(lvl, v) {
            NIL => (1 << 32) | v as u64,
            x => self.ett[lvl].root(x) as u64,
        }
    }

    fn size(&self, lvl: usize, v: usize) -> usize {
        match self.node(lvl, v) {
            NIL => 1,
            x => self.ett[lvl].vcount(self.ett[lvl].root(x)),
        }
    }

    pub fn connected(&self, u: usize, v: usize) -> bool {
        u == v || self.key(self.top, u) == self.key(self.top, v)
    }

    /// Vertices of `v`'s tree at the top level.
    pub fn component_of(&self, v: usize) -> Vec<usize> {
        match self.node(self.top, v) {
            NIL => vec![v],
            x => {
                let mut out = Vec::new();
                self.ett[self.top].vertices(self.ett[self.top].root(x), &mut out);
                out
            }
        }
    }

    fn link_at(&mut self, e: usize, lvl: usize) {
        let (u, v) = self.g.endpoints(e);
        let xu = self.vnode_at(lvl, u);
        let xv = self.vnode_at(lvl, v);
        let (a1, a2) = self.ett[lvl].link(xu, xv, e);
        debug_assert_eq!(self.arcs[e].len(), self.top - lvl);
        self.arcs[e].push((a1, a2));
        if lvl == self.level[e] as usize {
            self.ett[lvl].set_mark(a1, true);
        }
    }

    fn cut_all(&mut self, e: usize) {
        let arcs = core::mem::take(&mut self.arcs[e]);
        for (idx, (a1, a2)) in arcs.into_iter().enumerate() {
            self.ett[self.top - idx].cut(a1, a2);
        }
    }

    fn side(&self, e: usize, v: usize) -> usize {
        (self.g.endpoints(e).0 != v) as usize
    }

    fn bucket_add(&mut self, e: usize, lvl: usize) {
        let (u, v) = self.g.endpoints(e);
        for (s, w) in [(0, u), (1, v)] {
            let list = &mut self.buckets[w];
            let pos = match list.iter().position(|b| b.0 as usize == lvl) {
                Some(p) => p,
                None => {
                    list.push((lvl as u8, Vec::new()));
                    list.len() - 1
                }
            };
            let b = &mut list[pos].1;
            self.slot[e][s] = b.len() as u32;
            b.push(e as u32);
            if b.len() == 1 {
                let x = self.vnode_at(lvl, w);
                self.ett[lvl].set_mark(x, true);
            }
        }
    }

    fn bucket_remove(&mut self, e: usize, lvl: usize) {
        let (u, v) = self.g.endpoints(e);
        for (s, w) in [(0, u), (1, v)] {
            let pos = self.buckets[w].iter().position(|b| b.0 as usize == lvl).expect("edge is in its bucket");
            let at = self.slot[e][s] as usize;
            let b = &mut self.buckets[w][pos].1;
            b.swap_remove(at);
            if let Some(&moved) = b.get(at) {
                let ms = self.side(moved as usize, w);
                self.slot[moved as usize][ms] = at as u32;
            }
            if self.buckets[w][pos].1.is_empty() {
                self.buckets[w].swap_remove(pos);
                let x = self.node(lvl, w);
                self.ett[lvl].set_mark(x, false);
            }
        }
    }

    fn bucket(&self, v: usize, lvl: usize) -> &[u32] {
        self.buckets[v].iter().find(|b| b.0 as usize == lvl).map_or(&[], |b| &b.1)
    }

    /// Move tree edge `e` from level `lvl` to `lvl - 1`.
    fn push_down(&mut self, e: usize, lvl: usize) {
        let a1 = self.arcs[e][self.top - lvl].0;
        self.ett[lvl].set_mark(a1, false);
        self.level[e] = lvl as u8 - 1;
        self.link_at(e, lvl - 1);
    }

    fn demote(&mut self, e: usize, lvl: usize) {
        self.bucket_remove(e, lvl);
        self.level[e] = lvl as u8 - 1;
        self.bucket_add(e, lvl - 1);
    }

    /// Delete all present edges incident to `vertices` and tombstone them.
    pub fn delete_vertices(&mut self, vertices: &[usize], meter: &mut WorkDepthMeter) -> Result<ForestChange> {
        let n = self.g.n();
        let mut seen = BTreeSet::new();
        for &v in vertices {
            if v >= n || !self.alive[v] || !seen.insert(v) {
                return Err(Error::MissingVertex(v));
            }
        }
        let mut edges: Vec<usize> =
            vertices.iter().flat_map(|&v| self.g.incident(v)).map(|(_, e)| e).filter(|&e| self.present[e]).collect();
        edges.sort_unstable();
        edges.dedup();
        let change = self.delete_edges(&edges, meter)?;
        for &v in vertices {
            self.alive[v] = false;
        }
        Ok(change)
    }

    /// Delete a batch of present edges and restore maximality.
    pub fn delete_edges(&mut self, edges: &[usize], meter: &mut WorkDepthMeter) -> Result<ForestChange> {
        let mut seen = BTreeSet::new();
        for &e in edges {
            if e >= self.present.len() || !self.present[e] || !seen.insert(e) {
                return Err(Error::MissingEdge(e));
            }
        }
        let lg = log_rounds(self.g.n().max(2));
        let mut cut = Vec::new();
        for &e in edges {
            self.present[e] = false;
            if self.tree[e] {
                self.tree[e] = false;
                self.cut_all(e);
                cut.push(e);
            } else {
                self.bucket_remove(e, self.level[e] as usize);
            }
        }
        meter.work(edges.len() as u64 * lg * lg);
        meter.rounds_add(lg);
        let mut replacements = Vec::new();
        if let Some(lo) = cut.iter().map(|&e| self.level[e] as usize).min() {
            let mut pending = cut.clone();
            for i in lo.max(1)..=self.top {
                pending.retain(|&e| {
                    let (u, v) = self.g.endpoints(e);
                    self.key(i, u) != self.key(i, v) || self.level[e] as usize > i
                });
                let starts: Vec<usize> = pending
                    .iter()
                    .filter(|&&e| self.level[e] as usize <= i)
                    .flat_map(|&e| {
                        let (u, v) = self.g.endpoints(e);
                        [u, v]
                    })
                    .collect();
                if !starts.is_empty() {
                    self.search_level(i, starts, &mut replacements, meter);
                }
            }
        }
        replacements.sort_unstable();
        Ok(ForestChange { removed_tree_edges: cut, replacement_edges: replacements })
    }

    /// Replacement search at level `i` starting from the pieces holding `starts`.
    fn search_level(&mut self, i: usize, starts: Vec<usize>, out: &mut Vec<usize>, meter: &mut WorkDepthMeter) {
        let small = 1usize << (i - 1);
        let lg = log_rounds(self.g.n().max(2));
        let mut queue: Vec<(usize, usize)> = starts.into_iter().map(|v| (v, FIRST_BATCH)).collect();
        while !queue.is_empty() {
            let mut keyed: Vec<(u64, usize, usize)> = queue.iter().map(|&(v, b)| (self.key(i, v), v, b)).collect();
            keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.2.cmp(&a.2)).then(a.1.cmp(&b.1)));
            keyed.dedup_by_key(|t| t.0);
            keyed.retain(|&(_, v, _)| self.size(i, v) <= small);
            if keyed.is_empty() {
                break;
            }
            let mut work = keyed.len() as u64;
            let mut found = Vec::new();
            for &(_, v, _) in &keyed {
                let x = self.node(i, v);
                if x != NIL {
                    self.ett[i].marked(self.ett[i].root(x), false, usize::MAX, &mut found);
                }
            }
            work += found.len() as u64;
            for e in found {
                self.push_down(e, i);
            }
            let mut fetched = Vec::new();
            let mut exhausted = Vec::with_capacity(keyed.len());
            let mut verts = Vec::new();
            for &(_, v, b) in &keyed {
                let start = fetched.len();
                let x = self.node(i, v);
                if x != NIL {
                    verts.clear();
                    self.ett[i].marked(self.ett[i].root(x), true, b, &mut verts);
                    'fill: for &w in &verts {
                        for &e in self.bucket(w, i) {
                            if fetched.len() - start >= b {
                                break 'fill;
                            }
                            fetched.push(e as usize);
                        }
                    }
                }
                exhausted.push(fetched.len() - start < b);
            }
            fetched.sort_unstable();
            fetched.dedup();
            work += fetched.len() as u64;
            let mut cands = Vec::new();
            for &e in &fetched {
                let (u, v) = self.g.endpoints(e);
                let (ku, kv) = (self.key(i, u), self.key(i, v));
                if ku == kv {
                    self.demote(e, i);
                } else {
                    cands.push((e, ku, kv));
                }
            }
            let mut ids: BTreeMap<u64, usize> = BTreeMap::new();
            let mut uf: Vec<u32> = Vec::new();
            let mut merged = BTreeSet::new();
            let mut chosen = Vec::new();
            for &(e, ku, kv) in &cands {
                let mut id = |k: u64| {
                    *ids.entry(k).or_insert_with(|| {
                        uf.push(uf.len() as u32);
                        uf.len() - 1
                    })
                };
                let (a, b) = (id(ku), id(kv));
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                merged.insert(ku);
                merged.insert(kv);
                if ra != rb {
                    uf[ra] = rb as u32;
                    chosen.push(e);
                }
            }
            for &e in &chosen {
                self.bucket_remove(e, i);
                self.tree[e] = true;
                for lvl in (i..=self.top).rev() {
                    self.link_at(e, lvl);
                }
            }
            out.extend_from_slice(&chosen);
            meter.work(work * lg + chosen.len() as u64 * lg * lg);
            meter.rounds_add(2 * lg);
            queue = keyed
                .iter()
                .zip(exhausted)
                .filter(|&(&(k, _, _), ex)| !ex || merged.contains(&k))
                .map(|(&(_, v, b), _)| (v, b.saturating_mul(2)))
                .collect();
        }
    }

    /// Check every level invariant and maximality; returns the first failure.
    pub fn check(&self) -> core::result::Result<(), &'static str> {
        let n = self.g.n();
        for (e, (u, v)) in self.g.edges().enumerate() {
            if !self.present[e] {
                if !self.arcs[e].is_empty() {
                    return Err("absent edge still linked");
                }
                continue;
            }
            if !self.alive[u] || !self.alive[v] {
                return Err("present edge at a deleted vertex");
            }
            let l = self.level[e] as usize;
            if l == 0 {
                return Err("edge at level zero");
            }
            if self.tree[e] {
                if self.arcs[e].len() != self.top - l + 1 {
                    return Err("tree edge not linked on every level from its own");
                }
            } else {
                if self.key(l, u) != self.key(l, v) {
                    return Err("non-tree edge spans two trees of its level");
                }
                let s = self.slot[e];
                if self.bucket(u, l).get(s[0] as usize) != Some(&(e as u32))
                    || self.bucket(v, l).get(s[1] as usize) != Some(&(e as u32))
                {
                    return Err("non-tree edge missing from its buckets");
                }
            }
        }
        for lvl in 1..=self.top {
            let mut tree_arcs = 0usize;
            let mut seen = BTreeSet::new();
            for v in 0..n {
                let x = self.node(lvl, v);
                if x == NIL {
                    continue;
                }
                let r = self.ett[lvl].root(x);
                if self.ett[lvl].vcount(r) > 1 << lvl {
                    return Err("component larger than its level allows");
                }
                if self.ett[lvl].mark(x) != !self.bucket(v, lvl).is_empty() {
                    return Err("vertex mark disagrees with its bucket");
                }
                if seen.insert(r) {
                    tree_arcs += self.ett[lvl].tour(r).iter().filter(|t| !t.0).count();
                }
            }
            let expected = self.tree_edges().filter(|&e| self.level[e] as usize <= lvl).count();
            if tree_arcs != 2 * expected {
                return Err("level forest does not hold exactly the lower tree edges");
            }
        }
        Ok(())
    }
}

fn find(uf: &mut [u32], mut x: usize) -> usize {
    while uf[x] as usize != x {
        let p = uf[x] as usize;
        uf[x] = uf[p];
        x = p;
    }
    x
}
