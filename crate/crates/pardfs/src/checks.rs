//! Randomized drivers that compare the library against independent
//! brute-force oracles. Each returns a summary, or a message describing
//! the first disagreement.

use std::collections::BTreeMap;

use anyhow::Result;
use pardfs_core::dfs::{absorb_separator, verify_initial_segment, InitialSegment};
use pardfs_core::forest::{FindCc, SegmentOracleState};
use pardfs_core::separator::{apply_joins, find_separator, is_separator, merge_paths_with, separates, split_long_short, VertexState};
use pardfs_core::{Graph, PathList, WorkDepthMeter};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gen::{generate, GenKind, GenParams};

macro_rules! check {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One corpus entry; the graph is built on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub kind: GenKind,
    pub params: GenParams,
    pub seed: u64,
    /// 0-based DFS root.
    pub root: usize,
}

impl CorpusEntry {
    pub fn build(&self) -> Result<Graph> {
        generate(self.kind, &self.params, self.seed)
    }

    pub fn label(&self) -> String {
        let mut s = format!("{}", self.kind);
        if let Some(n) = self.params.n {
            s += &format!(" n={n}");
        }
        if let Some(m) = self.params.m {
            s += &format!(" m={m}");
        }
        for (k, v) in &self.params.extra {
            s += &format!(" {k}={v}");
        }
        s + &format!(" seed={}", self.seed)
    }
}

fn log_uniform(r: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    let x = r.random_range((lo as f64).ln()..=(hi as f64).ln());
    (x.exp().round() as usize).clamp(lo, hi)
}

/// Mixed corpus: paths, cycles, grids, stars, complete graphs up to 64
/// vertices, lollipops and connected random graphs with `10 <= n <= 10^5`
/// and `m <= 10n`. The first random graph always has `n = 10^5`.
pub fn corpus(count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    let mut first_random = true;
    for i in 0..count {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        let (kind, params) = match i % 8 {
            0 => (GenKind::Path, GenParams::n(log_uniform(&mut r, 1, 20_000))),
            1 => (GenKind::Cycle, GenParams::n(log_uniform(&mut r, 3, 20_000))),
            2 => {
                let w = log_uniform(&mut r, 1, 150);
                let h = log_uniform(&mut r, 1, 150);
                (GenKind::Grid, GenParams::default().with("w", w).with("h", h))
            }
            3 => (GenKind::Star, GenParams::n(log_uniform(&mut r, 1, 20_000))),
            4 => (GenKind::Complete, GenParams::n(r.random_range(1..=64))),
            5 => {
                let n = log_uniform(&mut r, 2, 5000);
                let k = r.random_range(1..=n.min(64));
                (GenKind::Lollipop, GenParams::n(n).with("clique", k))
            }
            _ => {
                let n = if first_random { 100_000 } else { log_uniform(&mut r, 10, 100_000) };
                let max = (10 * n).min(n * (n - 1) / 2);
                let m = if first_random { 5 * n } else { r.random_range(n - 1..=max) };
                first_random = false;
                (GenKind::RandomGnmConnected, GenParams::nm(n, m))
            }
        };
        let n = match kind {
            GenKind::Grid => params.extra["w"] * params.extra["h"],
            _ => params.n.unwrap_or(1),
        };
        out.push(CorpusEntry { kind, params, seed: s, root: r.random_range(0..n) });
    }
    out
}

/// Union-find component labels over the vertices not `removed`.
pub fn uf_labels(g: &Graph, removed: &[bool]) -> Vec<Option<usize>> {
    let n = g.n();
    let mut p: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (u, v) in g.edges() {
        if !removed[u] && !removed[v] {
            let (a, b) = (find(&mut p, u), find(&mut p, v));
            p[a.max(b)] = a.min(b);
        }
    }
    (0..n).map(|v| (!removed[v]).then(|| find(&mut p, v))).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleFuzzSummary {
    pub steps: usize,
    pub graphs: usize,
    pub queries: usize,
}

/// Compare every query of `st` against from-scratch answers.
fn compare_oracle(st: &SegmentOracleState<'_>, r: &mut ChaCha8Rng, queries: &mut usize) -> Result<(), String> {
    let g = st.graph();
    let n = g.n();
    st.forest().check().map_err(|e| format!("level forest: {e}"))?;
    st.rc().check().map_err(|e| format!("hierarchy: {e}"))?;
    let mut meter = WorkDepthMeter::new();
    let rebuilt = st.rebuild_rc(&mut meter).map_err(|e| e.to_string())?;
    if let Some(d) = st.rc().diff(&rebuilt) {
        return Err(format!("hierarchy differs from a rebuild: {d}"));
    }
    let removed: Vec<bool> = (0..n).map(|v| st.in_segment(v)).collect();
    let in_q: Vec<bool> = (0..n).map(|v| st.in_q(v)).collect();
    let fresh = SegmentOracleState::new(g, st.segment(), &in_q, 0x5eed, &mut meter).map_err(|e| e.to_string())?;
    let labels = uf_labels(g, &removed);
    let depth: BTreeMap<usize, u32> = st.segment().iter().copied().collect();
    let depth = &depth;
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        if let Some(l) = labels[v] {
            comps.entry(l).or_default().push(v);
        }
    }
    let mut any_flagged = false;
    for comp in comps.values() {
        *queries += 1;
        let c = st.component_of(comp[0]).ok_or("live vertex without component")?;
        let cf = fresh.component_of(comp[0]).ok_or("live vertex without component")?;
        check!(comp.iter().all(|&v| st.component_of(v) == Some(c)), "component of {} split", comp[0]);
        let tree_comp = st.forest().component_of(comp[0]);
        check!(tree_comp.len() == comp.len(), "forest component of {} has {} vertices, oracle {}", comp[0], tree_comp.len(), comp.len());
        check!(tree_comp.iter().all(|&v| labels[v] == labels[comp[0]]), "forest component of {} leaks", comp[0]);
        // exhaustive deepest attachment
        let want = comp
            .iter()
            .flat_map(|&v| g.neighbors(v).filter_map(move |x| depth.get(&x).map(|&d| (std::cmp::Reverse(d), x, v))))
            .min()
            .map(|(d, x, v)| (v, x, d.0));
        let got = st.lowest_node(c).ok();
        check!(got == want, "lowest_node of {}: {got:?}, scan {want:?}", comp[0]);
        check!(fresh.lowest_node(cf).ok() == want, "rebuilt lowest_node of {} disagrees", comp[0]);
        let flagged = comp.iter().any(|&v| in_q[v]);
        any_flagged |= flagged;
        check!(st.rc().flagged(c) == flagged, "flag of {} wrong", comp[0]);
        check!(fresh.rc().flagged(cf) == flagged, "rebuilt flag of {} wrong", comp[0]);
        let x = comp[r.random_range(0..comp.len())];
        match st.find_path_s2p(c, x, &mut meter) {
            Ok(p) => {
                let p = p.to_vec();
                check!(flagged, "path found in an unflagged component");
                let again = rebuilt.find_path_s2p(c, x, &mut meter).map_err(|e| e.to_string())?;
                check!(p == again, "find_path_s2p from {x} differs from the rebuild");
                check!(p[0] == x, "path does not start at {x}");
                let last = p[p.len() - 1];
                check!(in_q[last], "path from {x} ends outside the separator");
                check!(p[..p.len() - 1].iter().all(|&v| !in_q[v]), "path from {x} passes a separator vertex");
                for w in p.windows(2) {
                    check!(g.has_edge(w[0], w[1]), "path step {}-{} is not an edge", w[0], w[1]);
                    check!(labels[w[1]] == labels[x], "path leaves the component");
                }
            }
            Err(_) => check!(!flagged, "no path in a flagged component"),
        }
    }
    match st.find_cc() {
        FindCc::Success => check!(!any_flagged, "find_cc reports success with separator vertices left"),
        FindCc::Component(c) => check!(!st.in_segment(c) && st.rc().flagged(c), "find_cc returned an unflagged component"),
    }
    check!(matches!(fresh.find_cc(), FindCc::Success) == !any_flagged, "rebuilt find_cc disagrees");
    Ok(())
}

/// `steps` batch deletions of random forest paths on random graphs with
/// `n` vertices and `m` edges; a new graph starts whenever the segment
/// has swallowed the current one.
pub fn oracle_fuzz(n: usize, m: usize, steps: usize, seed: u64) -> Result<OracleFuzzSummary, String> {
    let mut r = rng(seed);
    let mut sum = OracleFuzzSummary::default();
    while sum.steps < steps {
        let g = generate(GenKind::RandomGnmConnected, &GenParams::nm(n, m), seed.wrapping_mul(7919) + sum.graphs as u64)
            .map_err(|e| e.to_string())?;
        sum.graphs += 1;
        let in_q: Vec<bool> = (0..n).map(|_| r.random_range(0..4) == 0).collect();
        let root = r.random_range(0..n);
        let mut st = SegmentOracleState::new(&g, &[(root, 0)], &in_q, seed, &mut WorkDepthMeter::new())
            .map_err(|e| e.to_string())?;
        compare_oracle(&st, &mut r, &mut sum.queries)?;
        let mut meter = WorkDepthMeter::new();
        while sum.steps < steps {
            let live: Vec<usize> = (0..n).filter(|&v| !st.in_segment(v)).collect();
            if live.is_empty() {
                break;
            }
            let a = live[r.random_range(0..live.len())];
            let comp = st.forest().component_of(a);
            let b = comp[r.random_range(0..comp.len())];
            let mut p = st.rc().find_path_p2p(a, b, &mut meter).map_err(|e| e.to_string())?;
            p.truncate(r.random_range(1..=6));
            let base = r.random_range(0..12);
            let depths: Vec<u32> = (0..p.len() as u32).map(|i| base + i).collect();
            st.batch_delete(&p, &depths, &mut meter).map_err(|e| format!("step {}: {e}", sum.steps))?;
            sum.steps += 1;
            compare_oracle(&st, &mut r, &mut sum.queries).map_err(|e| format!("step {}: {e}", sum.steps))?;
        }
    }
    Ok(sum)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MatcherSummary {
    pub k: usize,
    pub p2: usize,
    pub matched: usize,
    pub dead: usize,
}

/// Random vertex-disjoint paths of up to `max_len` vertices; each vertex
/// starts a path with probability `start_tenths / 10` if still free.
fn random_paths(g: &Graph, r: &mut ChaCha8Rng, start_tenths: u32, max_len: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut used = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    let mut paths = Vec::new();
    for &s in &order {
        if used[s] || r.random_range(0..10) >= start_tenths {
            continue;
        }
        used[s] = true;
        let mut p = vec![s];
        let want = r.random_range(1..=max_len);
        while p.len() < want {
            let last = p[p.len() - 1];
            let free: Vec<usize> = g.neighbors(last).filter(|&u| !used[u]).collect();
            if free.is_empty() {
                break;
            }
            let u = free[r.random_range(0..free.len())];
            used[u] = true;
            p.push(u);
        }
        paths.push(p);
    }
    paths
}

/// Whether a vertex of `from` reaches a vertex of `to` through `free`
/// vertices only.
fn reaches(g: &Graph, from: &[usize], to: &[bool], free: &[bool]) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = Vec::new();
    for &v in from {
        seen[v] = true;
        stack.push(v);
    }
    while let Some(v) = stack.pop() {
        for u in g.neighbors(v) {
            if to[u] {
                return true;
            }
            if free[u] && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    false
}

fn mask(n: usize, vs: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut m = vec![false; n];
    for v in vs {
        m[v] = true;
    }
    m
}

/// One merging instance on at most 40 vertices, checked by brute force:
/// `|P2| <= k/48`, no path through `D` from an unjoined long path, from a
/// discarded tail or from a dead vertex to an unreached short path.
pub fn matcher_case(case: u64) -> Result<MatcherSummary, String> {
    let mut r = rng(case ^ 0x6d61_7463);
    let n = r.random_range(8..=40);
    let m = (n + r.random_range(0..2 * n)).min(n * (n - 1) / 2);
    let g = generate(GenKind::RandomGnmConnected, &GenParams::nm(n, m), case).map_err(|e| e.to_string())?;
    let q = random_paths(&g, &mut r, 7, 5);
    let k = q.len();
    let (li, si) = split_long_short(&q);
    let longs: Vec<Vec<usize>> = li.iter().map(|&i| q[i].clone()).collect();
    let shorts: Vec<Vec<usize>> = si.iter().map(|&i| q[i].clone()).collect();
    let threshold = n.isqrt().min(k / 48 + 1);
    let mut meter = WorkDepthMeter::new();
    let rep = merge_paths_with(&g, &longs, &shorts, threshold, case, &mut meter).map_err(|e| e.to_string())?;
    let j = apply_joins(&longs, &shorts, &rep, &mut meter).map_err(|e| e.to_string())?;

    check!(48 * j.p2.len() <= k, "|P2| = {} with k = {k}", j.p2.len());
    check!(rep.state.max_changes() <= 2, "a vertex changed state {} times", rep.state.max_changes());
    let on_p = mask(n, j.p1.iter().chain(&j.p2).flatten().copied());
    let on_q = mask(n, q.iter().flatten().copied());
    let d: Vec<bool> = (0..n).map(|v| !on_p[v] && !on_q[v]).collect();
    let s_rest = mask(n, (0..shorts.len()).filter(|i| !j.s_hat.contains(i)).flat_map(|i| shorts[i].clone()));
    let joined: Vec<usize> = j.l_hat1.iter().chain(&j.l_hat2).copied().collect();
    for (i, l) in longs.iter().enumerate() {
        if !joined.contains(&i) {
            check!(!reaches(&g, l, &s_rest, &d), "unjoined long path {i} reaches an unreached short path");
        }
    }
    check!(!reaches(&g, &j.l_star, &s_rest, &d), "a discarded tail reaches an unreached short path");
    for &v in &rep.dead {
        check!(rep.state.state(v) == VertexState::Dead, "dead vertex {v} not marked dead");
        check!(!reaches(&g, &[v], &s_rest, &d), "dead vertex {v} reaches an unreached short path");
    }
    let mut cover = vec![0u8; n];
    for p in j.long.iter().chain(&j.short) {
        for w in p.windows(2) {
            check!(g.has_edge(w[0], w[1]), "rewritten path uses non-edge {}-{}", w[0], w[1]);
        }
        for &v in p {
            cover[v] += 1;
        }
    }
    check!(cover.iter().all(|&c| c <= 1), "rewritten paths overlap");
    for &v in q.iter().flatten() {
        check!(cover[v] == 1 || j.l_star.contains(&v), "vertex {v} lost from the paths");
    }
    Ok(MatcherSummary { k, p2: j.p2.len(), matched: j.p1.len(), dead: rep.dead.len() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorSummary {
    pub n: usize,
    pub paths: usize,
    pub bound: usize,
    /// Path counts before and after every reduction.
    pub counts: Vec<usize>,
}

/// Run `find_separator` and check the result: at most `48 floor(sqrt n)`
/// vertex-disjoint paths of `g` that separate it, every reduction
/// shrinking the count to at most 47/48 of its input.
pub fn separator_contract(g: &Graph, seed: u64) -> Result<SeparatorSummary, String> {
    let n = g.n();
    let mut meter = WorkDepthMeter::new();
    let sep = find_separator(g, seed, &mut meter).map_err(|e| e.to_string())?;
    let bound = 48 * n.isqrt();
    check!(sep.paths.len() <= bound, "{} paths exceed the bound {bound}", sep.paths.len());
    let mut used = vec![false; n];
    for p in &sep.paths {
        let vs = p.to_vec();
        check!(!vs.is_empty(), "empty separator path");
        for w in vs.windows(2) {
            check!(g.has_edge(w[0], w[1]), "separator path uses non-edge {}-{}", w[0], w[1]);
        }
        for v in vs {
            check!(!std::mem::replace(&mut used[v], true), "vertex {v} on two separator paths");
        }
    }
    check!(is_separator(g, &sep.paths, &mut meter).map_err(|e| e.to_string())?, "paths do not separate the graph");
    for w in sep.counts.windows(2) {
        check!(48 * w[1] <= 47 * w[0], "reduction from {} to {} paths", w[0], w[1]);
    }
    Ok(SeparatorSummary { n, paths: sep.paths.len(), bound, counts: sep.counts })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SegmentSummary {
    pub iterations: usize,
    pub segment: usize,
    pub largest_component: usize,
}

/// Whether every component of `g` minus the segment attaches to a single
/// root path of it, checked by walking parent pointers.
fn segment_extends(g: &Graph, seg: &InitialSegment) -> bool {
    let n = g.n();
    let removed = seg.membership();
    let labels = uf_labels(g, &removed);
    let mut attach: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        if let Some(l) = labels[v] {
            attach.entry(l).or_default().extend(g.neighbors(v).filter(|&x| removed[x]));
        }
    }
    let is_ancestor = |a: usize, mut d: usize| loop {
        if d == a {
            return true;
        }
        match seg.parent(d) {
            Some(p) => d = p,
            None => return false,
        }
    };
    attach.values().all(|xs| {
        let Some(&deep) = xs.iter().max_by_key(|&&x| seg.depth(x)) else { return true };
        xs.iter().all(|&x| is_ancestor(x, deep))
    })
}

/// Grow a segment from `root` over a freshly found separator, checking
/// after every absorb step that the segment still extends to a DFS tree,
/// and at the end that no component of the rest exceeds `n/2` vertices.
pub fn segment_contract(g: &Graph, root: usize, seed: u64) -> Result<SegmentSummary, String> {
    let sep = find_separator(g, seed, &mut WorkDepthMeter::new()).map_err(|e| e.to_string())?;
    segment_contract_with(g, root, sep.paths.iter().map(|p| p.to_vec()).collect(), seed)
}

/// As [`segment_contract`], over a random cover of `g` by vertex-disjoint
/// paths of up to `max_len` vertices.
pub fn segment_contract_cover(g: &Graph, root: usize, max_len: usize, seed: u64) -> Result<SegmentSummary, String> {
    let mut r = rng(seed);
    let paths = random_paths(g, &mut r, 10, max_len);
    segment_contract_with(g, root, paths, seed)
}

fn segment_contract_with(g: &Graph, root: usize, paths: Vec<Vec<usize>>, seed: u64) -> Result<SegmentSummary, String> {
    let n = g.n();
    let mut meter = WorkDepthMeter::new();
    check!(separates(g, paths.iter().map(|p| p.iter().copied()), &mut meter).map_err(|e| e.to_string())?, "input paths do not separate");
    let mut q = Vec::new();
    for vs in &paths {
        for part in vs.split(|&v| v == root).filter(|s| !s.is_empty()) {
            q.push(PathList::from_vertices(q.len(), part));
        }
    }
    let in_q = mask(n, q.iter().flat_map(|p| p.to_vec()));
    let mut seg = InitialSegment::new(n, root).map_err(|e| e.to_string())?;
    let mut st = SegmentOracleState::new(g, &[(root, 0)], &in_q, seed, &mut meter).map_err(|e| e.to_string())?;
    let mut step = 0;
    let mut failure = None;
    let mut hook = |seg: &InitialSegment, _: &SegmentOracleState<'_>| -> pardfs_core::Result<()> {
        step += 1;
        let verdict = verify_initial_segment(g, seg, &mut WorkDepthMeter::new());
        let brute = segment_extends(g, seg);
        if verdict.is_ok() != brute || !brute {
            failure = Some(format!("absorb step {step}: verifier {verdict:?}, brute force {brute}"));
            return Err(pardfs_core::Error::Precondition("segment check"));
        }
        Ok(())
    };
    let a = absorb_separator(g, &mut q, &mut seg, &mut st, &mut meter, &mut hook);
    if let Some(f) = failure {
        return Err(f);
    }
    let a = a.map_err(|e| e.to_string())?;
    let labels = uf_labels(g, &seg.membership());
    let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
    for l in labels.into_iter().flatten() {
        *sizes.entry(l).or_default() += 1;
    }
    let largest = sizes.values().copied().max().unwrap_or(0);
    check!(2 * largest <= n, "component of {largest} vertices left beside a segment of {} (n = {n})", seg.len());
    Ok(SegmentSummary { iterations: a.iterations, segment: seg.len(), largest_component: largest })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_mixed() {
        let a = corpus(40, 3);
        assert_eq!(a, corpus(40, 3));
        for k in [GenKind::Path, GenKind::Grid, GenKind::Complete, GenKind::Lollipop, GenKind::RandomGnmConnected] {
            assert!(a.iter().any(|e| e.kind == k));
        }
        let big = a.iter().find(|e| e.kind == GenKind::RandomGnmConnected).unwrap();
        assert_eq!(big.params.n, Some(100_000));
    }

    #[test]
    fn short_oracle_fuzz() {
        let s = oracle_fuzz(60, 150, 80, 4).unwrap();
        assert_eq!(s.steps, 80);
        assert!(s.queries > 80);
    }

    #[test]
    fn segment_contract_on_grid() {
        let g = generate(GenKind::Grid, &GenParams::default().with("w", 40).with("h", 30), 0).unwrap();
        let s = segment_contract(&g, 17, 5).unwrap();
        assert!(s.iterations > 0 && 2 * s.largest_component <= g.n());
        let c = segment_contract_cover(&g, 17, 12, 5).unwrap();
        assert!(c.iterations < s.iterations);
    }

    #[test]
    fn matcher_cases_pass() {
        for c in 0..10 {
            matcher_case(c).unwrap();
        }
    }
}
