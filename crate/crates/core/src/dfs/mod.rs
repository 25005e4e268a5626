//! Initial segments, separator absorption and the recursive DFS driver.

mod absorb;
mod segment;
mod verify;

use alloc::vec::Vec;

pub use absorb::{absorb_separator, AbsorbStats};
pub use segment::{verify_initial_segment, Defect, InitialSegment};
pub use verify::{sequential_dfs, verify_dfs_tree};

use crate::components::connected_components;
use crate::forest::SegmentOracleState;
use crate::mix::derive_seed;
use crate::separator::find_separator;
use crate::{Error, Graph, PathList, Result, WorkDepthMeter};

/// Runs independent sibling tasks. Results come back in input order.
pub trait Executor: Sync {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send;
}

/// Runs tasks one after another on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        items.into_iter().map(f).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DfsConfig {
    /// Components of at most this many vertices use [`sequential_dfs`].
    pub cutoff: usize,
    pub seed: u64,
    /// Run [`verify_initial_segment`] after every absorption step.
    pub check_segments: bool,
}

impl Default for DfsConfig {
    fn default() -> Self {
        DfsConfig { cutoff: 256, seed: 0, check_segments: false }
    }
}

/// Costs split by stage. Work adds up over the whole run; rounds follow
/// the critical path, so sibling branches contribute their maximum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageMeters {
    pub separator: WorkDepthMeter,
    pub absorb: WorkDepthMeter,
    pub base_case: WorkDepthMeter,
    pub split: WorkDepthMeter,
}

impl StageMeters {
    fn then(&mut self, o: &StageMeters) {
        self.separator.then(&o.separator);
        self.absorb.then(&o.absorb);
        self.base_case.then(&o.base_case);
        self.split.then(&o.split);
    }

    fn join(&mut self, parts: &[StageMeters]) {
        self.separator.join_parallel(parts.iter().map(|p| &p.separator));
        self.absorb.join_parallel(parts.iter().map(|p| &p.absorb));
        self.base_case.join_parallel(parts.iter().map(|p| &p.base_case));
        self.split.join_parallel(parts.iter().map(|p| &p.split));
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DfsStats {
    /// Levels of recursion, 1 when the root call is a base case.
    pub recursion_depth: usize,
    pub separator_calls: usize,
    pub base_cases: usize,
    pub absorb_iterations: usize,
    /// Largest separator handed to an absorption, in paths.
    pub max_separator_paths: usize,
    pub segment_checks: usize,
}

impl DfsStats {
    fn join(&mut self, o: &DfsStats) {
        self.recursion_depth = self.recursion_depth.max(o.recursion_depth);
        self.separator_calls += o.separator_calls;
        self.base_cases += o.base_cases;
        self.absorb_iterations += o.absorb_iterations;
        self.max_separator_paths = self.max_separator_paths.max(o.max_separator_paths);
        self.segment_checks += o.segment_checks;
    }
}

/// A DFS tree of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfsResult {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub meter: WorkDepthMeter,
    pub stages: StageMeters,
    pub stats: DfsStats,
}

/// DFS tree of the connected graph `g` rooted at `root`.
///
/// Builds a path separator, absorbs it into an initial segment rooted at
/// `root`, and recurses into the components of the rest, each of at most
/// half the size, hanging each below its deepest segment neighbour.
pub fn parallel_dfs<E: Executor>(g: &Graph, root: usize, cfg: &DfsConfig, exec: &E) -> Result<DfsResult> {
    let n = g.n();
    if root >= n {
        return Err(Error::VertexOutOfRange { id: root, n });
    }
    let mut meter = WorkDepthMeter::new();
    if connected_components(g, None, &mut meter).count() > 1 {
        return Err(Error::Disconnected);
    }
    let mut out = solve(g, root, cfg, cfg.seed, exec)?;
    out.stages.split.then(&meter);
    meter.then(&out.meter);
    Ok(DfsResult { root, parent: out.parent, meter, stages: out.stages, stats: out.stats })
}

struct Solved {
    parent: Vec<Option<usize>>,
    meter: WorkDepthMeter,
    stages: StageMeters,
    stats: DfsStats,
}

fn solve<E: Executor>(g: &Graph, root: usize, cfg: &DfsConfig, seed: u64, exec: &E) -> Result<Solved> {
    let n = g.n();
    let mut stages = StageMeters::default();
    let mut stats = DfsStats { recursion_depth: 1, ..DfsStats::default() };
    if n <= cfg.cutoff.max(1) {
        let parent = sequential_dfs(g, root, None);
        // a sequential traversal: one round per step
        let steps = (n + 2 * g.m()) as u64;
        stages.base_case.work(steps);
        stages.base_case.rounds_add(steps);
        stats.base_cases = 1;
        return Ok(Solved { parent, meter: stages.base_case, stages, stats });
    }

    let sep = find_separator(g, derive_seed(seed, 1), &mut stages.separator)?;
    stats.separator_calls = 1;
    let mut q = split_off(sep.paths, root);
    stats.max_separator_paths = q.len();
    let mut in_q = vec![false; n];
    for p in &q {
        for v in p.iter() {
            in_q[v] = true;
        }
    }
    let mut seg = InitialSegment::new(n, root)?;
    let mut st = SegmentOracleState::new(g, &[(root, 0)], &in_q, derive_seed(seed, 2), &mut stages.absorb)?;
    let mut checks = 0;
    let mut hook = |seg: &InitialSegment, _: &SegmentOracleState<'_>| -> Result<()> {
        if cfg.check_segments {
            checks += 1;
            verify_initial_segment(g, seg, &mut WorkDepthMeter::new())
                .map_err(|_| Error::InvariantViolation("segment cannot be extended to a DFS tree"))?;
        }
        Ok(())
    };
    let a = absorb_separator(g, &mut q, &mut seg, &mut st, &mut stages.absorb, &mut hook)?;
    stats.absorb_iterations = a.iterations;
    stats.segment_checks = checks;

    let member = seg.membership();
    let cc = connected_components(g, Some(&member), &mut stages.split);
    if cc.max_size() > n / 2 {
        return Err(Error::InvariantViolation("segment does not separate the graph"));
    }
    let mut parent = vec![None; n];
    for &v in seg.vertices() {
        parent[v] = seg.parent(v);
    }
    let mut tasks = Vec::with_capacity(cc.count());
    for members in cc.members() {
        let c = st.component_of(members[0]).ok_or(Error::MissingVertex(members[0]))?;
        let (v, x, _) = st.lowest_node(c)?;
        parent[v] = Some(x);
        let local = members.binary_search(&v).map_err(|_| Error::MissingVertex(v))?;
        tasks.push((members, local));
    }
    drop(st);
    stages.split.round(tasks.len() as u64);

    let subs = exec.map(tasks, |(members, local): (Vec<usize>, usize)| {
        let sub = g.induced(&members);
        let child_seed = derive_seed(seed, 16 + members[local] as u64);
        let mut split = WorkDepthMeter::new();
        split.round((sub.n() + sub.m()) as u64);
        solve(&sub, local, cfg, child_seed, exec).map(|mut s| {
            s.meter.then(&split);
            s.stages.split.then(&split);
            (members, s)
        })
    });

    let mut meter = WorkDepthMeter::new();
    meter.then(&stages.separator);
    meter.then(&stages.absorb);
    meter.then(&stages.split);
    let mut child_meters = Vec::with_capacity(subs.len());
    let mut child_stages = Vec::with_capacity(subs.len());
    let mut child_stats = DfsStats::default();
    for r in subs {
        let (members, s) = r?;
        for (i, p) in s.parent.into_iter().enumerate() {
            if let Some(p) = p {
                parent[members[i]] = Some(members[p]);
            }
        }
        child_meters.push(s.meter);
        child_stages.push(s.stages);
        child_stats.join(&s.stats);
    }
    meter.join_parallel(child_meters.iter());
    let mut combined = StageMeters::default();
    combined.then(&stages);
    combined.join(&child_stages);
    let depth = 1 + child_stats.recursion_depth;
    stats.join(&child_stats);
    stats.recursion_depth = depth;
    Ok(Solved { parent, meter, stages: combined, stats })
}

/// Remove `root` from its separator path, leaving the pieces on either
/// side as separate paths.
fn split_off(paths: Vec<PathList>, root: usize) -> Vec<PathList> {
    let mut out = Vec::with_capacity(paths.len() + 1);
    for p in paths {
        if !p.contains(root) {
            out.push(p.to_vec());
            continue;
        }
        let vs = p.to_vec();
        let at = vs.iter().position(|&v| v == root).unwrap_or(0);
        for part in [&vs[..at], &vs[at + 1..]] {
            if !part.is_empty() {
                out.push(part.to_vec());
            }
        }
    }
    out.iter().enumerate().map(|(i, p)| PathList::from_vertices(i, p)).collect()
}
