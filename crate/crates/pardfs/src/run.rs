//! DFS forests over arbitrary inputs, verification and run reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Result};
use pardfs_core::components::connected_components;
use pardfs_core::dfs::{parallel_dfs, sequential_dfs, verify_dfs_tree, DfsConfig, DfsStats, StageMeters};
use pardfs_core::{Error, Executor, Graph, WorkDepthMeter};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Parallel,
    Sequential,
}

impl FromStr for Mode {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parallel" => Ok(Mode::Parallel),
            "sequential" => Ok(Mode::Sequential),
            _ => bail!("mode must be parallel or sequential"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Fast,
    Full,
}

impl FromStr for VerifyLevel {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(VerifyLevel::Fast),
            "full" => Ok(VerifyLevel::Full),
            _ => bail!("verify must be fast or full"),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Parallel => "parallel",
            Mode::Sequential => "sequential",
        })
    }
}

/// DFS forest: the tree of `root`'s component first, every other component
/// rooted at its smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestRun {
    pub parent: Vec<Option<usize>>,
    pub roots: Vec<usize>,
    pub meter: WorkDepthMeter,
    pub stages: StageMeters,
    pub stats: DfsStats,
}

/// Run the chosen algorithm on every component of `g`.
///
/// Errors from the parallel algorithm, including failed segment checks,
/// are passed through.
pub fn dfs_forest<E: Executor>(g: &Graph, root: usize, mode: Mode, cfg: &DfsConfig, exec: &E) -> Result<ForestRun, Error> {
    let n = g.n();
    if root >= n {
        return Err(Error::VertexOutOfRange { id: root, n });
    }
    let mut meter = WorkDepthMeter::new();
    let cc = connected_components(g, None, &mut meter);
    let mut comps = cc.members();
    let first = cc.label(root).expect("every vertex is labelled");
    comps.swap(0, first);
    let roots: Vec<usize> = comps.iter().enumerate().map(|(i, c)| if i == 0 { root } else { c[0] }).collect();

    let solve = |g: &Graph, r: usize| -> Result<(Vec<Option<usize>>, WorkDepthMeter, StageMeters, DfsStats), Error> {
        match mode {
            Mode::Parallel => parallel_dfs(g, r, cfg, exec).map(|res| (res.parent, res.meter, res.stages, res.stats)),
            Mode::Sequential => {
                let parent = sequential_dfs(g, r, None);
                // one round per traversal step
                let mut m = WorkDepthMeter::new();
                let steps = (g.n() + 2 * g.m()) as u64;
                m.work(steps);
                m.rounds_add(steps);
                let stages = StageMeters { base_case: m, ..StageMeters::default() };
                Ok((parent, m, stages, DfsStats { recursion_depth: 1, base_cases: 1, ..DfsStats::default() }))
            }
        }
    };
    if comps.len() == 1 {
        let (parent, m, stages, stats) = solve(g, root)?;
        meter.then(&m);
        return Ok(ForestRun { parent, roots, meter, stages, stats });
    }
    let tasks: Vec<(Vec<usize>, usize)> = comps.into_iter().zip(&roots).map(|(c, &r)| (c, r)).collect();
    let parts = exec.map(tasks, |(members, r): (Vec<usize>, usize)| {
        let local = members.binary_search(&r).expect("root belongs to its component");
        let sub = g.induced(&members);
        solve(&sub, local).map(|res| (members, res))
    });
    let mut parent = vec![None; n];
    let mut meters = Vec::new();
    let mut stage_parts = Vec::new();
    let mut stats = DfsStats::default();
    for part in parts {
        let (members, (p, m, st, ds)) = part?;
        for (i, p) in p.iter().enumerate() {
            parent[members[i]] = p.map(|p| members[p]);
        }
        meters.push(m);
        stage_parts.push(st);
        stats.recursion_depth = stats.recursion_depth.max(ds.recursion_depth);
        stats.separator_calls += ds.separator_calls;
        stats.base_cases += ds.base_cases;
        stats.absorb_iterations += ds.absorb_iterations;
        stats.max_separator_paths = stats.max_separator_paths.max(ds.max_separator_paths);
        stats.segment_checks += ds.segment_checks;
    }
    meter.join_parallel(meters.iter());
    let mut stages = StageMeters::default();
    stages.separator.join_parallel(stage_parts.iter().map(|s| &s.separator));
    stages.absorb.join_parallel(stage_parts.iter().map(|s| &s.absorb));
    stages.base_case.join_parallel(stage_parts.iter().map(|s| &s.base_case));
    stages.split.join_parallel(stage_parts.iter().map(|s| &s.split));
    Ok(ForestRun { parent, roots, meter, stages, stats })
}

/// Verify every tree of a DFS forest on its own component.
pub fn verify_forest(g: &Graph, parent: &[Option<usize>], roots: &[usize]) -> Result<(), String> {
    let n = g.n();
    if parent.len() != n {
        return Err(format!("parent array has {} entries for {n} vertices", parent.len()));
    }
    let cc = connected_components(g, None, &mut WorkDepthMeter::new());
    let mut rooted = vec![false; cc.count()];
    for &r in roots {
        let l = cc.label(r).ok_or("root outside the graph")?;
        if std::mem::replace(&mut rooted[l], true) {
            return Err(format!("two roots in the component of {}", r + 1));
        }
    }
    if let Some(l) = rooted.iter().position(|r| !r) {
        return Err(format!("component {l} has no root"));
    }
    if cc.count() == 1 {
        return verify_dfs_tree(g, parent, roots[0]).map_err(|d| format!("{d} (0-based ids)"));
    }
    let comps = cc.members();
    for &r in roots {
        let members = &comps[cc.label(r).unwrap_or(0)];
        let sub = g.induced(members);
        let local = |v: usize| members.binary_search(&v).ok();
        let mut p = Vec::with_capacity(members.len());
        for &v in members {
            match parent[v] {
                Some(u) => match local(u) {
                    Some(l) => p.push(Some(l)),
                    None => return Err(format!("parent of {} lies in another component", v + 1)),
                },
                None => p.push(None),
            }
        }
        let lr = local(r).unwrap_or(0);
        verify_dfs_tree(&sub, &p, lr).map_err(|d| format!("component of {}: {d} (local ids)", r + 1))?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub m: usize,
    pub source: String,
    pub generator: Option<String>,
    pub params: BTreeMap<String, usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub root: usize,
    pub cutoff: usize,
    pub verify: VerifyLevel,
    pub workers: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cost {
    pub work_units: u64,
    pub rounds: u64,
}

impl From<&WorkDepthMeter> for Cost {
    fn from(m: &WorkDepthMeter) -> Self {
        Cost { work_units: m.work_units(), rounds: m.rounds() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stages {
    pub separator: Cost,
    pub absorb: Cost,
    pub recursion: Cost,
    pub base_case: Cost,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verifier {
    pub dfs_tree: bool,
    /// Segment checks performed, present in full mode.
    pub segment_checks: Option<usize>,
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunStats {
    pub components: usize,
    pub recursion_depth: usize,
    pub separator_calls: usize,
    pub base_cases: usize,
    pub absorb_iterations: usize,
    pub max_separator_paths: usize,
}

/// Outcome of one CLI run. Field order is fixed so that reports for equal
/// inputs are byte-identical apart from `wall_time_ms`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub graph: GraphInfo,
    pub config: RunConfig,
    pub outcome: String,
    pub verified: bool,
    pub work_units: u64,
    pub rounds: u64,
    pub wall_time_ms: f64,
    pub stages: Stages,
    pub stats: RunStats,
    pub verifier: Verifier,
    /// 1-based roots of the forest.
    pub roots: Vec<usize>,
    /// 1-based parent per vertex, 0 for roots.
    pub parent: Vec<usize>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub const SCHEMA: u32 = 1;

/// Run, verify and report. `Err` only for invalid input; a failed check
/// yields a report with `verified = false`.
pub fn run_and_report<E: Executor>(
    g: &Graph,
    info: GraphInfo,
    config: RunConfig,
    seed: u64,
    exec: &E,
) -> Result<(RunReport, Option<ForestRun>)> {
    let root = config.root.checked_sub(1).filter(|&r| r < g.n());
    let Some(root) = root else {
        bail!("root {} is not a vertex of a graph with {} vertices", config.root, g.n());
    };
    let cfg = DfsConfig { cutoff: config.cutoff, seed, check_segments: config.verify == VerifyLevel::Full };
    let t = Instant::now();
    let run = dfs_forest(g, root, config.mode, &cfg, exec);
    let wall = t.elapsed().as_secs_f64() * 1e3;
    let (verified, diagnostic, run) = match run {
        Ok(r) => match verify_forest(g, &r.parent, &r.roots) {
            Ok(()) => (true, None, Some(r)),
            Err(d) => (false, Some(d), Some(r)),
        },
        Err(e @ (Error::InvariantViolation(_) | Error::Precondition(_))) => (false, Some(e.to_string()), None),
        Err(e) => return Err(e.into()),
    };
    let empty = WorkDepthMeter::new();
    let meter = run.as_ref().map_or(empty, |r| r.meter);
    let stages = run.as_ref().map(|r| r.stages).unwrap_or_default();
    let stats = run.as_ref().map(|r| r.stats).unwrap_or_default();
    let full = config.verify == VerifyLevel::Full && config.mode == Mode::Parallel;
    let report = RunReport {
        schema: SCHEMA,
        graph: info,
        config,
        outcome: if verified { "verified" } else { "verification-failed" }.to_string(),
        verified,
        work_units: meter.work_units(),
        rounds: meter.rounds(),
        wall_time_ms: (wall * 1000.0).round() / 1000.0,
        stages: Stages {
            separator: (&stages.separator).into(),
            absorb: (&stages.absorb).into(),
            recursion: (&stages.split).into(),
            base_case: (&stages.base_case).into(),
        },
        stats: RunStats {
            components: run.as_ref().map_or(0, |r| r.roots.len()),
            recursion_depth: stats.recursion_depth,
            separator_calls: stats.separator_calls,
            base_cases: stats.base_cases,
            absorb_iterations: stats.absorb_iterations,
            max_separator_paths: stats.max_separator_paths,
        },
        verifier: Verifier { dfs_tree: verified, segment_checks: full.then_some(stats.segment_checks), diagnostic },
        roots: run.as_ref().map_or_else(Vec::new, |r| r.roots.iter().map(|v| v + 1).collect()),
        parent: run.as_ref().map_or_else(Vec::new, |r| r.parent.iter().map(|p| p.map_or(0, |p| p + 1)).collect()),
    };
    Ok((report, run))
}
