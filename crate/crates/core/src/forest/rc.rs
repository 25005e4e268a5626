use alloc::string::String;
use alloc::vec::Vec;

use crate::meter::log_rounds;
use crate::mix::coin;
use crate::{Error, Result, WorkDepthMeter};

const NONE: u32 = u32::MAX;
/// Survives the level being processed; death level not known yet.
const PENDING: u32 = u32::MAX - 1;

/// A cluster of the hierarchy: the one formed when a vertex is removed, or
/// a forest edge that was never compressed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cluster {
    Vertex(u32),
    Edge(u32),
}

/// How a vertex leaves the hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Fate {
    /// Leaf raked onto its only neighbour.
    Rake(u32),
    /// Degree-two vertex spliced out between its neighbours (ascending).
    Compress(u32, u32),
    /// Last vertex of its component; forms the root cluster.
    #[default]
    Finalize,
}

/// Deepest segment neighbour `x` of forest vertex `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Low {
    pub v: u32,
    pub x: u32,
    pub depth: u32,
}

impl Low {
    /// Deeper first, then smaller `x`, then smaller `v`.
    pub fn beats(self, other: Low) -> bool {
        (self.depth, other.x, other.v) > (other.depth, self.x, self.v)
    }
}

fn best(a: Option<Low>, b: Option<Low>) -> Option<Low> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.beats(x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Per-vertex inputs: separator membership and deepest segment neighbour
/// as `(x, depth)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VertexValue {
    pub flag: bool,
    pub low: Option<(u32, u32)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct VRec {
    alive: bool,
    adj: Vec<Vec<(u32, Cluster)>>,
    death: u32,
    fate: Fate,
    rakes: Vec<u32>,
    parent: u32,
    value: VertexValue,
    flag: bool,
    low: Option<Low>,
    prev: u32,
    next: u32,
    listed: bool,
}

/// Rake-and-compress hierarchy over a forest.
///
/// Level 0 is the forest itself. At each level every leaf rakes onto its
/// neighbour (of two adjacent leaves only the smaller id does), and a
/// degree-two vertex with no leaf neighbour compresses when its coin is
/// heads and both neighbours' coins are tails. Isolated vertices finalize.
/// Coins depend only on `(seed, vertex, level)`, so the hierarchy is a
/// function of the forest and updates reproduce a fresh build exactly.
#[derive(Clone, Debug)]
pub struct RcForest {
    seed: u64,
    vs: Vec<VRec>,
    ends: Vec<(u32, u32)>,
    edge_in: Vec<bool>,
    edge_parent: Vec<u32>,
    head: u32,
    tail: u32,
    touched: Vec<u32>,
    dirty: Vec<Vec<u32>>,
    dirty_mark: Vec<bool>,
}

impl RcForest {
    /// Hierarchy over the forest `edges` (`(id, u, v)`) on the `alive`
    /// vertices of `0..n`.
    pub fn build(
        n: usize,
        alive: &[bool],
        edges: &[(usize, usize, usize)],
        values: &[VertexValue],
        seed: u64,
        meter: &mut WorkDepthMeter,
    ) -> Result<Self> {
        let mut rc = RcForest {
            seed,
            vs: (0..n)
                .map(|v| VRec {
                    alive: alive[v],
                    death: NONE,
                    parent: NONE,
                    prev: NONE,
                    next: NONE,
                    value: values[v],
                    ..VRec::default()
                })
                .collect(),
            ends: Vec::new(),
            edge_in: Vec::new(),
            edge_parent: Vec::new(),
            head: NONE,
            tail: NONE,
            touched: Vec::new(),
            dirty: Vec::new(),
            dirty_mark: vec![false; n],
        };
        let mut uf: Vec<u32> = (0..n as u32).collect();
        for &(e, u, v) in edges {
            rc.check_insert(e, u, v)?;
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            if a == b {
                return Err(Error::NotAForest(e));
            }
            uf[a] = b as u32;
            rc.add_edge(e, u, v);
        }
        for v in 0..n {
            if rc.vs[v].alive {
                rc.vs[v].adj.push(Vec::new());
            }
        }
        for &(e, u, v) in edges {
            rc.vs[u].adj[0].push((v as u32, Cluster::Edge(e as u32)));
            rc.vs[v].adj[0].push((u as u32, Cluster::Edge(e as u32)));
        }
        let mut m0 = Vec::new();
        for v in 0..n {
            if rc.vs[v].alive {
                rc.vs[v].adj[0].sort_unstable();
                rc.vs[v].death = PENDING;
                m0.push(v as u32);
            }
        }
        rc.propagate(m0, meter);
        rc.settle(meter);
        Ok(rc)
    }

    fn check_insert(&self, e: usize, u: usize, v: usize) -> Result<()> {
        let n = self.vs.len();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { id: w, n });
            }
            if !self.vs[w].alive {
                return Err(Error::MissingVertex(w));
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.edge_in.get(e).copied().unwrap_or(false) {
            return Err(Error::NotAForest(e));
        }
        Ok(())
    }

    fn add_edge(&mut self, e: usize, u: usize, v: usize) {
        if self.ends.len() <= e {
            self.ends.resize(e + 1, (NONE, NONE));
            self.edge_in.resize(e + 1, false);
            self.edge_parent.resize(e + 1, NONE);
        }
        self.ends[e] = (u as u32, v as u32);
        self.edge_in[e] = true;
    }

    pub fn n(&self) -> usize {
        self.vs.len()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.vs[v].alive
    }

    pub fn has_edge(&self, e: usize) -> bool {
        self.edge_in.get(e).copied().unwrap_or(false)
    }

    /// Forest edges as `(id, u, v)`, ascending by id.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        (0..self.edge_in.len())
            .filter(|&e| self.edge_in[e])
            .map(|e| (e, self.ends[e].0 as usize, self.ends[e].1 as usize))
            .collect()
    }

    pub fn value(&self, v: usize) -> VertexValue {
        self.vs[v].value
    }

    /// Number of levels in the hierarchy.
    pub fn height(&self) -> usize {
        self.vs.iter().filter(|r| r.alive).map(|r| r.death as usize + 1).max().unwrap_or(0)
    }

    fn deg(&self, v: u32, r: usize) -> usize {
        self.vs[v as usize].adj[r].len()
    }

    /// `None` means the vertex survives level `r`.
    fn decide(&self, v: u32, r: usize) -> Option<Fate> {
        let adj = &self.vs[v as usize].adj[r];
        let lvl = r as u32;
        match adj.len() {
            0 => Some(Fate::Finalize),
            1 => {
                let u = adj[0].0;
                (self.deg(u, r) != 1 || v < u).then_some(Fate::Rake(u))
            }
            2 => {
                let (a, b) = (adj[0].0, adj[1].0);
                let free = self.deg(a, r) != 1 && self.deg(b, r) != 1;
                let heads = coin(self.seed, v, lvl) && !coin(self.seed, a, lvl) && !coin(self.seed, b, lvl);
                (free && heads).then_some(Fate::Compress(a, b))
            }
            _ => None,
        }
    }

    /// Current decision of a vertex alive at level `r`.
    fn decision(&self, v: u32, r: usize) -> Option<Fate> {
        let rec = &self.vs[v as usize];
        (rec.death == r as u32).then_some(rec.fate)
    }

    fn mark_dirty(&mut self, v: u32) {
        if v == NONE || !self.vs[v as usize].alive || self.dirty_mark[v as usize] {
            return;
        }
        self.dirty_mark[v as usize] = true;
        let d = self.vs[v as usize].death as usize;
        if self.dirty.len() <= d {
            self.dirty.resize(d + 1, Vec::new());
        }
        self.dirty[d].push(v);
    }

    fn retire(&mut self, v: u32, old: Fate) {
        match old {
            Fate::Rake(u) => {
                let rakes = &mut self.vs[u as usize].rakes;
                if let Ok(i) = rakes.binary_search(&v) {
                    rakes.remove(i);
                }
                self.touched.push(u);
            }
            Fate::Finalize => self.unlist(v),
            Fate::Compress(..) => {}
        }
    }

    /// Re-derive levels from the vertices whose level-0 adjacency changed.
    fn propagate(&mut self, mut m: Vec<u32>, meter: &mut WorkDepthMeter) {
        let mut r = 0usize;
        while !m.is_empty() {
            m.sort_unstable();
            m.dedup();
            let mut work = m.len() as u64;
            let mut a = m.clone();
            for &v in &m {
                let rec = &self.vs[v as usize];
                if rec.alive && rec.adj.len() > r {
                    a.extend(rec.adj[r].iter().map(|t| t.0));
                }
            }
            a.sort_unstable();
            a.dedup();
            let mut d = Vec::new();
            for &v in &a {
                let rec = &self.vs[v as usize];
                if !rec.alive {
                    if rec.death != NONE {
                        let old = rec.fate;
                        self.retire(v, old);
                        let rec = &mut self.vs[v as usize];
                        rec.death = NONE;
                        rec.adj.clear();
                        rec.rakes.clear();
                        rec.parent = NONE;
                        rec.fate = Fate::default();
                        rec.flag = false;
                        rec.low = None;
                    }
                    continue;
                }
                if rec.adj.len() <= r {
                    continue;
                }
                let prev = rec.death;
                let old = match prev {
                    PENDING | NONE => None,
                    x if x == r as u32 => Some(Some(rec.fate)),
                    x if x > r as u32 => Some(None),
                    _ => None,
                };
                let new = self.decide(v, r);
                if old == Some(new) {
                    continue;
                }
                if prev != PENDING && prev != NONE {
                    // the old death, at this level or above, no longer happens
                    let f = rec.fate;
                    self.retire(v, f);
                }
                d.push(v);
                self.touched.push(v);
                let rec = &mut self.vs[v as usize];
                match new {
                    None => rec.death = PENDING,
                    Some(f) => {
                        rec.death = r as u32;
                        rec.fate = f;
                        rec.adj.truncate(r + 1);
                        match f {
                            Fate::Rake(u) => {
                                rec.parent = u;
                                let rakes = &mut self.vs[u as usize].rakes;
                                if let Err(i) = rakes.binary_search(&v) {
                                    rakes.insert(i, v);
                                }
                                self.touched.push(u);
                            }
                            Fate::Finalize => rec.parent = NONE,
                            Fate::Compress(..) => {}
                        }
                    }
                }
            }
            let mut c = a;
            for &v in &d {
                c.extend(self.vs[v as usize].adj[r].iter().map(|t| t.0));
            }
            c.sort_unstable();
            c.dedup();
            let mut next = Vec::new();
            for &w in &c {
                let rec = &self.vs[w as usize];
                if !rec.alive || rec.adj.len() <= r || rec.death == r as u32 {
                    continue;
                }
                let mut up: Vec<(u32, Cluster)> = Vec::with_capacity(rec.adj[r].len());
                for &(u, cl) in &rec.adj[r] {
                    match self.decision(u, r) {
                        None => up.push((u, cl)),
                        Some(Fate::Rake(_)) => {}
                        Some(Fate::Compress(p, q)) => up.push((if p == w { q } else { p }, Cluster::Vertex(u))),
                        Some(Fate::Finalize) => unreachable!("a finalizing vertex has no neighbours"),
                    }
                }
                up.sort_unstable();
                work += up.len() as u64 + 1;
                let rec = &mut self.vs[w as usize];
                if rec.adj.len() > r + 1 {
                    if rec.adj[r + 1] == up {
                        continue;
                    }
                    rec.adj[r + 1] = up;
                } else {
                    rec.adj.push(up);
                }
                next.push(w);
            }
            self.touched.extend_from_slice(&m);
            meter.work(work);
            meter.rounds_add(1);
            m = next;
            r += 1;
        }
    }

    /// Fix parent pointers of everything touched, then aggregates and the
    /// root list.
    fn settle(&mut self, meter: &mut WorkDepthMeter) {
        let mut touched = core::mem::take(&mut self.touched);
        touched.sort_unstable();
        touched.dedup();
        let mut work = touched.len() as u64;
        for &v in &touched {
            let rec = &self.vs[v as usize];
            if !rec.alive {
                continue;
            }
            let d = rec.death as usize;
            let kids: Vec<Cluster> = rec.adj[d].iter().map(|t| t.1).collect();
            work += kids.len() as u64;
            for c in kids {
                self.set_parent(c, v);
            }
        }
        for &v in &touched {
            self.mark_dirty(v);
        }
        let mut roots = Vec::new();
        let mut lvl = 0;
        while lvl < self.dirty.len() {
            let batch = core::mem::take(&mut self.dirty[lvl]);
            work += batch.len() as u64;
            for v in batch {
                self.dirty_mark[v as usize] = false;
                let (flag, low) = self.recompute(v);
                let rec = &mut self.vs[v as usize];
                let changed = rec.flag != flag || rec.low != low;
                rec.flag = flag;
                rec.low = low;
                if rec.fate == Fate::Finalize {
                    if changed || !rec.listed {
                        roots.push(v);
                    }
                } else if changed {
                    let p = rec.parent;
                    self.mark_dirty(p);
                }
            }
            lvl += 1;
        }
        self.dirty.clear();
        for v in roots {
            self.unlist(v);
            self.list(v);
        }
        meter.work(work);
        meter.rounds_add(lvl.max(1) as u64);
    }

    fn set_parent(&mut self, c: Cluster, p: u32) {
        match c {
            Cluster::Vertex(u) => self.vs[u as usize].parent = p,
            Cluster::Edge(e) => self.edge_parent[e as usize] = p,
        }
    }

    fn cluster_flag(&self, c: Cluster) -> bool {
        match c {
            Cluster::Vertex(u) => self.vs[u as usize].flag,
            Cluster::Edge(_) => false,
        }
    }

    fn recompute(&self, v: u32) -> (bool, Option<Low>) {
        let rec = &self.vs[v as usize];
        let mut flag = rec.value.flag;
        let mut low = rec.value.low.map(|(x, depth)| Low { v, x, depth });
        for c in self.child_iter(v) {
            if let Cluster::Vertex(u) = c {
                let k = &self.vs[u as usize];
                flag |= k.flag;
                low = best(low, k.low);
            }
        }
        (flag, low)
    }

    fn child_iter(&self, v: u32) -> impl Iterator<Item = Cluster> + '_ {
        let rec = &self.vs[v as usize];
        let edges = rec.adj[rec.death as usize].iter().map(|t| t.1);
        edges.chain(rec.rakes.iter().map(|&w| Cluster::Vertex(w)))
    }

    /// Children of the cluster of `v`, flagged ones first, each group in
    /// cluster order.
    pub fn children(&self, v: usize) -> Vec<Cluster> {
        let mut out: Vec<Cluster> = self.child_iter(v as u32).collect();
        out.sort_unstable_by_key(|&c| (!self.cluster_flag(c), c));
        out
    }

    fn unlist(&mut self, v: u32) {
        let rec = &self.vs[v as usize];
        if !rec.listed {
            return;
        }
        let (p, n) = (rec.prev, rec.next);
        if p == NONE {
            self.head = n;
        } else {
            self.vs[p as usize].next = n;
        }
        if n == NONE {
            self.tail = p;
        } else {
            self.vs[n as usize].prev = p;
        }
        let rec = &mut self.vs[v as usize];
        rec.listed = false;
        rec.prev = NONE;
        rec.next = NONE;
    }

    fn list(&mut self, v: u32) {
        let rec = &self.vs[v as usize];
        if !rec.alive || rec.fate != Fate::Finalize || rec.listed {
            return;
        }
        if rec.flag {
            let h = self.head;
            let rec = &mut self.vs[v as usize];
            rec.next = h;
            rec.prev = NONE;
            if h == NONE {
                self.tail = v;
            } else {
                self.vs[h as usize].prev = v;
            }
            self.head = v;
        } else {
            let t = self.tail;
            let rec = &mut self.vs[v as usize];
            rec.prev = t;
            rec.next = NONE;
            if t == NONE {
                self.head = v;
            } else {
                self.vs[t as usize].next = v;
            }
            self.tail = v;
        }
        self.vs[v as usize].listed = true;
    }

    /// Apply a batch: delete forest edges, tombstone now-isolated vertices,
    /// insert forest edges `(id, u, v)` and change vertex values.
    ///
    /// Insertions are checked against the forest left by the deletions; on
    /// a cycle the deletions stay applied and an error is returned.
    pub fn update(
        &mut self,
        deletions: &[usize],
        tombstones: &[usize],
        insertions: &[(usize, usize, usize)],
        values: &[(usize, VertexValue)],
        meter: &mut WorkDepthMeter,
    ) -> Result<()> {
        let n = self.vs.len();
        let mut seen = Vec::new();
        for &e in deletions {
            if !self.has_edge(e) {
                return Err(Error::MissingEdge(e));
            }
            seen.push(e);
        }
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MissingEdge(seen.windows(2).find(|w| w[0] == w[1]).unwrap()[0]));
        }
        for &v in tombstones {
            if v >= n || !self.vs[v].alive {
                return Err(Error::MissingVertex(v));
            }
        }
        for &(v, _) in values {
            if v >= n {
                return Err(Error::VertexOutOfRange { id: v, n });
            }
        }
        let mut m = Vec::new();
        for &e in deletions {
            let (u, v) = self.ends[e];
            for (a, b) in [(u, v), (v, u)] {
                let adj = &mut self.vs[a as usize].adj[0];
                let i = adj.binary_search(&(b, Cluster::Edge(e as u32))).expect("forest edge in adjacency");
                adj.remove(i);
            }
            self.edge_in[e] = false;
            self.edge_parent[e] = NONE;
            m.extend([u, v]);
        }
        for &v in tombstones {
            if !self.vs[v].adj[0].is_empty() {
                return Err(Error::Precondition("tombstoned vertex still has forest edges"));
            }
            self.vs[v].alive = false;
            m.push(v as u32);
        }
        if !m.is_empty() {
            self.propagate(m, meter);
            self.settle(meter);
        }
        if !insertions.is_empty() {
            let mut ids: Vec<u32> = Vec::new();
            let mut uf: Vec<u32> = Vec::new();
            for &(e, u, v) in insertions {
                self.check_insert(e, u, v)?;
                let mut id = |r: u32| match ids.iter().position(|&x| x == r) {
                    Some(i) => i,
                    None => {
                        ids.push(r);
                        uf.push(uf.len() as u32);
                        uf.len() - 1
                    }
                };
                let (a, b) = (id(self.root_of(u)), id(self.root_of(v)));
                let (a, b) = (find(&mut uf, a), find(&mut uf, b));
                if a == b {
                    return Err(Error::NotAForest(e));
                }
                uf[a] = b as u32;
            }
            let mut m = Vec::new();
            for &(e, u, v) in insertions {
                self.add_edge(e, u, v);
                for (a, b) in [(u, v), (v, u)] {
                    let adj = &mut self.vs[a].adj[0];
                    let key = (b as u32, Cluster::Edge(e as u32));
                    let i = adj.binary_search(&key).unwrap_err();
                    adj.insert(i, key);
                }
                m.extend([u as u32, v as u32]);
            }
            self.propagate(m, meter);
            self.settle(meter);
        }
        if !values.is_empty() {
            for &(v, val) in values {
                if self.vs[v].value != val {
                    self.vs[v].value = val;
                    self.touched.push(v as u32);
                }
            }
            self.settle(meter);
        }
        Ok(())
    }

    /// Root vertex of the cluster holding `v`.
    pub fn root_of(&self, v: usize) -> u32 {
        let mut at = v as u32;
        while self.vs[at as usize].parent != NONE {
            at = self.vs[at as usize].parent;
        }
        at
    }

    fn chain(&self, v: usize) -> Vec<u32> {
        let mut out = vec![v as u32];
        let mut at = v as u32;
        while self.vs[at as usize].parent != NONE {
            at = self.vs[at as usize].parent;
            out.push(at);
        }
        out
    }

    /// Component roots, flagged ones first.
    pub fn roots(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut at = self.head;
        while at != NONE {
            out.push(at as usize);
            at = self.vs[at as usize].next;
        }
        out
    }

    /// First root of the list if it is flagged.
    pub fn first_flagged(&self) -> Option<usize> {
        (self.head != NONE && self.vs[self.head as usize].flag).then_some(self.head as usize)
    }

    pub fn is_root(&self, v: usize) -> bool {
        self.vs[v].alive && self.vs[v].parent == NONE
    }

    pub fn flagged(&self, v: usize) -> bool {
        self.vs[v].flag
    }

    pub fn low(&self, v: usize) -> Option<Low> {
        self.vs[v].low
    }

    fn edge_to(&self, k: u32, b: u32) -> Cluster {
        let rec = &self.vs[k as usize];
        let adj = &rec.adj[rec.death as usize];
        let i = adj.partition_point(|t| t.0 < b);
        debug_assert_eq!(adj[i].0, b);
        adj[i].1
    }

    /// Append the vertices after `a` on the way through `c` to `b`.
    fn walk_edge(&self, c: Cluster, a: u32, b: u32, out: &mut Vec<usize>) {
        match c {
            Cluster::Edge(_) => out.push(b as usize),
            Cluster::Vertex(u) => {
                let (ca, cb) = (self.edge_to(u, a), self.edge_to(u, b));
                self.walk_edge(ca, a, u, out);
                self.walk_edge(cb, u, b, out);
            }
        }
    }

    /// Append the path from `ch[0]` (exclusive) to boundary `b` of `ch[j]`.
    fn to_boundary(&self, ch: &[u32], j: usize, b: u32, out: &mut Vec<usize>) {
        let k = ch[j];
        if j > 0 {
            let c = ch[j - 1];
            let rc = &self.vs[c as usize];
            if let Fate::Compress(p, q) = rc.fate {
                if rc.parent == k && (p == b || q == b) {
                    return self.to_boundary(ch, j - 1, b, out);
                }
            }
            self.to_boundary(ch, j - 1, k, out);
        }
        self.walk_edge(self.edge_to(k, b), k, b, out);
    }

    /// The forest path from `x` to `y`.
    pub fn find_path_p2p(&self, x: usize, y: usize, meter: &mut WorkDepthMeter) -> Result<Vec<usize>> {
        let n = self.vs.len();
        for v in [x, y] {
            if v >= n || !self.vs[v].alive {
                return Err(Error::MissingVertex(v));
            }
        }
        let cx = self.chain(x);
        let cy = self.chain(y);
        if cx.last() != cy.last() {
            return Err(Error::DifferentComponents(x, y));
        }
        let (mut i, mut j) = (cx.len() - 1, cy.len() - 1);
        while i > 0 && j > 0 && cx[i - 1] == cy[j - 1] {
            i -= 1;
            j -= 1;
        }
        let z = cx[i];
        let mut out = vec![x];
        if i > 0 {
            self.to_boundary(&cx, i - 1, z, &mut out);
        }
        let mut back = vec![y];
        if j > 0 {
            self.to_boundary(&cy, j - 1, z, &mut back);
        }
        back.pop();
        out.extend(back.into_iter().rev());
        meter.work((out.len() + cx.len() + cy.len()) as u64);
        meter.rounds_add(log_rounds(n.max(2)));
        Ok(out)
    }

    /// A forest path from `x` to a flagged vertex with no flagged vertex
    /// before its end. `root` must be the flagged root of `x`'s component.
    pub fn find_path_s2p(&self, root: usize, x: usize, meter: &mut WorkDepthMeter) -> Result<Vec<usize>> {
        if x >= self.vs.len() || !self.vs[x].alive {
            return Err(Error::MissingVertex(x));
        }
        let ch = self.chain(x);
        if *ch.last().unwrap() as usize != root {
            return Err(Error::DifferentComponents(x, root));
        }
        if !self.vs[root].flag {
            return Err(Error::Unflagged);
        }
        if self.vs[x].value.flag {
            return Ok(vec![x]);
        }
        let mut at = *ch.iter().find(|&&c| self.vs[c as usize].flag).unwrap();
        while !self.vs[at as usize].value.flag {
            let next = self.child_iter(at).filter(|&c| self.cluster_flag(c)).min();
            match next {
                Some(Cluster::Vertex(u)) => at = u,
                _ => return Err(Error::InvariantViolation("flagged cluster without a flagged child")),
            }
        }
        let mut p = self.find_path_p2p(x, at as usize, meter)?;
        if let Some(i) = p.iter().position(|&v| self.vs[v].value.flag) {
            p.truncate(i + 1);
        }
        Ok(p)
    }

    /// Check flags, augmentations, parent links and list order.
    pub fn check(&self) -> core::result::Result<(), &'static str> {
        let mut roots = 0;
        for v in 0..self.vs.len() {
            let rec = &self.vs[v];
            if !rec.alive {
                if rec.listed || !rec.adj.is_empty() {
                    return Err("dead vertex still in the hierarchy");
                }
                continue;
            }
            if rec.death as usize + 1 != rec.adj.len() {
                return Err("levels do not end at the death level");
            }
            if (rec.flag, rec.low) != self.recompute(v as u32) {
                return Err("aggregate disagrees with its children");
            }
            for c in self.child_iter(v as u32) {
                let p = match c {
                    Cluster::Vertex(u) => self.vs[u as usize].parent,
                    Cluster::Edge(e) => self.edge_parent[e as usize],
                };
                if p != v as u32 {
                    return Err("child does not point back to its parent");
                }
            }
            match rec.fate {
                Fate::Finalize => {
                    roots += 1;
                    if !rec.listed || rec.parent != NONE || !rec.adj[rec.death as usize].is_empty() {
                        return Err("root cluster misfiled");
                    }
                }
                Fate::Rake(u) => {
                    if rec.parent != u || self.vs[u as usize].rakes.binary_search(&(v as u32)).is_err() {
                        return Err("raked cluster not under its target");
                    }
                }
                Fate::Compress(..) => {}
            }
        }
        let list = self.roots();
        if list.len() != roots {
            return Err("root list out of sync");
        }
        if list.windows(2).any(|w| !self.vs[w[0]].flag && self.vs[w[1]].flag) {
            return Err("unflagged root ahead of a flagged one");
        }
        Ok(())
    }

    /// First structural difference from `other`, ignoring root list order.
    pub fn diff(&self, other: &RcForest) -> Option<String> {
        if self.vs.len() != other.vs.len() {
            return Some(String::from("vertex counts differ"));
        }
        for v in 0..self.vs.len() {
            let (a, b) = (&self.vs[v], &other.vs[v]);
            let same = a.alive == b.alive
                && a.adj == b.adj
                && (!a.alive || (a.death == b.death && a.fate == b.fate))
                && a.rakes == b.rakes
                && a.parent == b.parent
                && a.value == b.value
                && a.flag == b.flag
                && a.low == b.low;
            if !same {
                return Some(format!("vertex {v}: {a:?} vs {b:?}"));
            }
        }
        if self.edges() != other.edges() {
            return Some(String::from("edge sets differ"));
        }
        for (e, _, _) in self.edges() {
            if self.edge_parent[e] != other.edge_parent[e] {
                return Some(format!("edge {e} has parent {} vs {}", self.edge_parent[e], other.edge_parent[e]));
            }
        }
        let mut ra = self.roots();
        let mut rb = other.roots();
        ra.sort_unstable();
        rb.sort_unstable();
        (ra != rb).then(|| String::from("root sets differ"))
    }

    /// Plain view of every cluster for dumps.
    pub fn clusters(&self) -> Vec<ClusterView> {
        (0..self.vs.len())
            .filter(|&v| self.vs[v].alive)
            .map(|v| {
                let rec = &self.vs[v];
                ClusterView {
                    vertex: v,
                    level: rec.death as usize,
                    fate: rec.fate,
                    parent: (rec.parent != NONE).then_some(rec.parent as usize),
                    children: self.children(v),
                    flag: rec.flag,
                    low: rec.low,
                }
            })
            .collect()
    }
}

/// One cluster of an [`RcForest`], detached from the structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterView {
    pub vertex: usize,
    pub level: usize,
    pub fate: Fate,
    pub parent: Option<usize>,
    pub children: Vec<Cluster>,
    pub flag: bool,
    pub low: Option<Low>,
}

fn find(uf: &mut [u32], mut x: usize) -> usize {
    while uf[x] as usize != x {
        let p = uf[x] as usize;
        uf[x] = uf[p];
        x = p;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(n: usize, edges: &[(usize, usize)], flags: &[usize]) -> RcForest {
        let e: Vec<(usize, usize, usize)> = edges.iter().enumerate().map(|(i, &(u, v))| (i, u, v)).collect();
        let mut vals = vec![VertexValue::default(); n];
        for &f in flags {
            vals[f].flag = true;
        }
        RcForest::build(n, &vec![true; n], &e, &vals, 11, &mut WorkDepthMeter::new()).unwrap()
    }

    #[test]
    fn isolated_vertex_is_its_own_root() {
        let rc = build(1, &[], &[]);
        assert_eq!(rc.roots(), vec![0]);
        assert_eq!(rc.height(), 1);
        rc.check().unwrap();
    }

    #[test]
    fn flag_reaches_the_root() {
        let edges: Vec<(usize, usize)> = (0..5).map(|i| (i, i + 1)).collect();
        let rc = build(6, &edges, &[3]);
        rc.check().unwrap();
        let root = rc.roots()[0];
        assert!(rc.flagged(root));
        for c in rc.chain(3) {
            assert!(rc.flagged(c as usize));
        }
        assert_eq!(rc.first_flagged(), Some(root));
    }

    #[test]
    fn cycle_is_rejected() {
        let e = [(0, 0, 1), (1, 1, 2), (2, 2, 0)];
        let r = RcForest::build(3, &[true; 3], &e, &[VertexValue::default(); 3], 1, &mut WorkDepthMeter::new());
        assert_eq!(r.err(), Some(Error::NotAForest(2)));
    }

    #[test]
    fn paths_on_a_small_tree() {
        //      0
        //     / \
        //    1   2
        //   / \   \
        //  3   4   5 - 6
        let rc = build(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)], &[6]);
        let m = &mut WorkDepthMeter::new();
        assert_eq!(rc.find_path_p2p(3, 3, m).unwrap(), vec![3]);
        assert_eq!(rc.find_path_p2p(3, 1, m).unwrap(), vec![3, 1]);
        assert_eq!(rc.find_path_p2p(3, 6, m).unwrap(), vec![3, 1, 0, 2, 5, 6]);
        assert_eq!(rc.find_path_p2p(6, 4, m).unwrap(), vec![6, 5, 2, 0, 1, 4]);
        let root = rc.roots()[0];
        assert_eq!(rc.find_path_s2p(root, 4, m).unwrap(), vec![4, 1, 0, 2, 5, 6]);
        assert_eq!(rc.find_path_s2p(root, 6, m).unwrap(), vec![6]);
    }

    #[test]
    fn insertion_joins_singletons() {
        let mut rc = build(2, &[], &[]);
        assert_eq!(rc.roots().len(), 2);
        rc.update(&[], &[], &[(0, 0, 1)], &[], &mut WorkDepthMeter::new()).unwrap();
        assert_eq!(rc.roots().len(), 1);
        rc.check().unwrap();
        assert!(rc.update(&[], &[], &[(1, 1, 0)], &[], &mut WorkDepthMeter::new()).is_err());
    }

    #[test]
    fn leaf_deletion_matches_a_fresh_build() {
        let mut rc = build(4, &[(0, 1), (1, 2), (2, 3)], &[0]);
        rc.update(&[2], &[], &[], &[], &mut WorkDepthMeter::new()).unwrap();
        rc.check().unwrap();
        let fresh = build(4, &[(0, 1), (1, 2)], &[0]);
        assert_eq!(rc.diff(&fresh), None);
        assert_eq!(rc.roots().len(), 2);
        assert!(rc.first_flagged().is_some());
    }

    #[test]
    fn deeper_low_wins() {
        let a = Low { v: 1, x: 9, depth: 5 };
        let b = Low { v: 2, x: 3, depth: 3 };
        assert_eq!(best(Some(a), Some(b)), Some(a));
        let c = Low { v: 0, x: 8, depth: 5 };
        assert_eq!(best(Some(a), Some(c)), Some(c));
    }
}
