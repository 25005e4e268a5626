use alloc::vec::Vec;

use super::contract::ContractedGraph;
use crate::active::ActiveGraph;
use crate::matching::maximal_matching_edges;
use crate::mix::derive_seed;
use crate::{Error, Graph, Result, WorkDepthMeter};

/// Vertex state of the contracted graph during head extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexState {
    Available,
    InPath,
    Dead,
}

/// Per-vertex state plus how often each vertex changed it.
#[derive(Clone, Debug)]
pub struct MatchState {
    state: Vec<VertexState>,
    changes: Vec<u8>,
}

impl MatchState {
    pub(crate) fn new(n: usize) -> Self {
        MatchState { state: vec![VertexState::Available; n], changes: vec![0; n] }
    }

    fn set(&mut self, v: usize, s: VertexState) {
        self.state[v] = s;
        self.changes[v] += 1;
    }

    pub fn state(&self, v: usize) -> VertexState {
        self.state[v]
    }

    pub fn changes(&self, v: usize) -> u8 {
        self.changes[v]
    }

    pub fn max_changes(&self) -> u8 {
        self.changes.iter().copied().max().unwrap_or(0)
    }
}

/// Match heads to distinct available neighbours in doubling phases.
///
/// Phase `i` lets every still unmatched head pick up to `2^i` available
/// neighbours, takes a maximal matching of the resulting bipartite graph
/// and deactivates the matched vertices. A head drops out once it has no
/// available neighbour left, so an unmatched head ends with none.
pub fn match_heads(ag: &mut ActiveGraph<'_>, heads: &[usize], seed: u64, meter: &mut WorkDepthMeter) -> Vec<Option<usize>> {
    let n = ag.graph().n();
    let mut out = vec![None; heads.len()];
    let mut pending: Vec<usize> = (0..heads.len()).filter(|&i| ag.root_count(heads[i]) > 0).collect();
    let mut local = vec![u32::MAX; n];
    let mut t = 1usize;
    let mut phase = 0u64;
    while !pending.is_empty() {
        let verts: Vec<usize> = pending.iter().map(|&i| heads[i]).collect();
        let picks = ag.query_active(&verts, t, meter);
        let mut right: Vec<usize> = Vec::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (a, cand) in picks.iter().enumerate() {
            for &v in cand {
                if local[v] == u32::MAX {
                    local[v] = right.len() as u32;
                    right.push(v);
                }
                edges.push((a as u32, (pending.len() + local[v] as usize) as u32));
            }
        }
        let chosen = maximal_matching_edges(pending.len() + right.len(), &edges, derive_seed(seed, phase), meter);
        let mut matched = Vec::with_capacity(chosen.len());
        for e in chosen {
            let (a, b) = edges[e];
            let v = right[b as usize - pending.len()];
            out[pending[a as usize]] = Some(v);
            matched.push(v);
        }
        for &v in &right {
            local[v] = u32::MAX;
        }
        ag.make_inactive(&matched, meter).expect("matched vertices are distinct and were available");
        pending.retain(|&i| out[i].is_none() && ag.root_count(heads[i]) > 0);
        meter.round(verts.len() as u64);
        t = t.saturating_mul(2);
        phase += 1;
    }
    out
}

/// Result of extending one long path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LongOutcome {
    /// Every vertex of the path died; the path is kept as it was.
    Dead,
    /// Reached a short path. `kept` is the surviving prefix ending at the
    /// junction `x`, `ext` the new vertices after `x`, `y` the vertex of
    /// short path `short` that the last edge enters.
    Matched { kept: Vec<usize>, discarded: Vec<usize>, ext: Vec<usize>, short: usize, y: usize },
    /// Still extending when the process stopped.
    Extended { kept: Vec<usize>, discarded: Vec<usize>, ext: Vec<usize> },
}

/// Everything one merging pass produced.
#[derive(Clone, Debug)]
pub struct MergeReport {
    pub outcomes: Vec<LongOutcome>,
    /// Original vertices that died, in order of death.
    pub dead: Vec<usize>,
    pub steps: usize,
    pub state: MatchState,
}

/// Merge long paths toward short paths, stopping once fewer than
/// `floor(sqrt n)` heads are still extending. Needs `k ≥ 48·floor(sqrt n)`.
pub fn merge_paths(
    g: &Graph,
    longs: &[Vec<usize>],
    shorts: &[Vec<usize>],
    seed: u64,
    meter: &mut WorkDepthMeter,
) -> Result<MergeReport> {
    let root = g.n().isqrt();
    if longs.len() + shorts.len() < 48 * root {
        return Err(Error::Precondition("merging needs at least 48·sqrt(n) paths"));
    }
    merge_paths_with(g, longs, shorts, root, seed, meter)
}

/// [`merge_paths`] with an explicit stop threshold on extending heads.
pub fn merge_paths_with(
    g: &Graph,
    longs: &[Vec<usize>],
    shorts: &[Vec<usize>],
    threshold: usize,
    seed: u64,
    meter: &mut WorkDepthMeter,
) -> Result<MergeReport> {
    let cg = ContractedGraph::new(g, shorts, meter)?;
    let h = cg.graph();
    let mut state = MatchState::new(h.n());
    let mut stacks: Vec<Vec<usize>> = Vec::with_capacity(longs.len());
    let mut in_long = Vec::new();
    for l in longs {
        if l.is_empty() {
            return Err(Error::EmptyPath);
        }
        for &v in l {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { id: v, n: g.n() });
            }
            if cg.image(v) != v || state.state(v) != VertexState::Available {
                return Err(Error::OverlappingPaths(v));
            }
            state.state[v] = VertexState::InPath;
            in_long.push(v);
        }
        // the endpoint with the smaller id is the head, kept on top
        let mut s = l.clone();
        if s[0] < s[s.len() - 1] {
            s.reverse();
        }
        stacks.push(s);
    }
    let mut base: Vec<usize> = stacks.iter().map(Vec::len).collect();
    if h.n() < 2 {
        return Ok(MergeReport {
            outcomes: stacks.iter().map(|_| LongOutcome::Dead).collect(),
            dead: Vec::new(),
            steps: 0,
            state,
        });
    }
    let mut ag = ActiveGraph::new(h, meter)?;
    ag.make_inactive(&in_long, meter)?;
    let mut matched_to: Vec<Option<(usize, usize)>> = vec![None; longs.len()];
    let mut active: Vec<usize> = (0..longs.len()).collect();
    let mut dead = Vec::new();
    let mut steps = 0usize;
    while !active.is_empty() && active.len() >= threshold {
        let heads: Vec<usize> = active.iter().map(|&l| *stacks[l].last().unwrap()).collect();
        let res = match_heads(&mut ag, &heads, derive_seed(seed, steps as u64 + 1), meter);
        let mut changed = 0u64;
        for (i, &l) in active.iter().enumerate() {
            match res[i] {
                Some(v) => {
                    state.set(v, VertexState::InPath);
                    stacks[l].push(v);
                    if let Some(j) = cg.short_of(v) {
                        let u = heads[i];
                        let y = cg.attach_point(g, u, j).ok_or(Error::InvariantViolation("head not adjacent to its match"))?;
                        matched_to[l] = Some((j, y));
                    }
                }
                None => {
                    let u = stacks[l].pop().unwrap();
                    state.set(u, VertexState::Dead);
                    dead.push(u);
                    base[l] = base[l].min(stacks[l].len());
                }
            }
            changed += 1;
        }
        meter.record_state_changes(changed);
        meter.round(active.len() as u64);
        active.retain(|&l| matched_to[l].is_none() && !stacks[l].is_empty());
        steps += 1;
    }
    let outcomes = stacks
        .iter()
        .enumerate()
        .map(|(l, s)| {
            if s.is_empty() {
                return LongOutcome::Dead;
            }
            let mut oriented = longs[l].clone();
            if oriented[0] < oriented[oriented.len() - 1] {
                oriented.reverse();
            }
            let b = base[l];
            let kept = s[..b].to_vec();
            let discarded = oriented[b..].to_vec();
            match matched_to[l] {
                Some((short, y)) => {
                    LongOutcome::Matched { kept, discarded, ext: s[b..s.len() - 1].to_vec(), short, y }
                }
                None => LongOutcome::Extended { kept, discarded, ext: s[b..].to_vec() },
            }
        })
        .collect();
    meter.round(longs.len() as u64);
    Ok(MergeReport { outcomes, dead, steps, state })
}
