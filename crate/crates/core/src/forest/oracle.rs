use alloc::vec::Vec;

use super::{LevelForest, Low, RcForest, VertexValue};
use crate::mix::derive_seed;
use crate::{Error, Graph, PathList, Result, WorkDepthMeter};

/// Answer of [`SegmentOracleState::find_cc`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FindCc {
    /// Root vertex of a component of `G − T′` that still holds a separator
    /// vertex.
    Component(usize),
    Success,
}

/// Dynamic view of `G − T′` for the absorption loop.
///
/// Components are named by the root vertex of their cluster; names are
/// only valid until the next [`batch_delete`](Self::batch_delete).
#[derive(Clone, Debug)]
pub struct SegmentOracleState<'g> {
    forest: LevelForest<'g>,
    rc: RcForest,
    in_q: Vec<bool>,
    depth: Vec<u32>,
    segment: Vec<(usize, u32)>,
    values: Vec<VertexValue>,
    rc_seed: u64,
}

const OUT: u32 = u32::MAX;

impl<'g> SegmentOracleState<'g> {
    /// State for segment vertices `segment` (`(v, depth)`) and separator
    /// membership `in_q`.
    pub fn new(
        g: &'g Graph,
        segment: &[(usize, u32)],
        in_q: &[bool],
        seed: u64,
        meter: &mut WorkDepthMeter,
    ) -> Result<Self> {
        let n = g.n();
        if in_q.len() != n {
            return Err(Error::ValueCount { values: in_q.len(), len: n });
        }
        let mut depth = vec![OUT; n];
        for &(v, d) in segment {
            if v >= n {
                return Err(Error::VertexOutOfRange { id: v, n });
            }
            if depth[v] != OUT {
                return Err(Error::DuplicateVertex(v));
            }
            depth[v] = d;
        }
        let removed: Vec<bool> = depth.iter().map(|&d| d != OUT).collect();
        let forest = LevelForest::new(g, Some(&removed), derive_seed(seed, 1), meter);
        let mut values = vec![VertexValue::default(); n];
        for v in 0..n {
            if removed[v] {
                continue;
            }
            values[v].flag = in_q[v];
            for (x, _) in g.incident(v) {
                if removed[x] {
                    values[v].low = better(values[v].low, x as u32, depth[x]);
                }
            }
        }
        meter.round((n + g.m()) as u64);
        let alive: Vec<bool> = removed.iter().map(|r| !r).collect();
        let rc_seed = derive_seed(seed, 2);
        let rc = RcForest::build(n, &alive, &tree_edges(&forest), &values, rc_seed, meter)?;
        Ok(SegmentOracleState { forest, rc, in_q: in_q.to_vec(), depth, segment: segment.to_vec(), values, rc_seed })
    }

    pub fn graph(&self) -> &'g Graph {
        self.forest.graph()
    }

    pub fn forest(&self) -> &LevelForest<'g> {
        &self.forest
    }

    pub fn rc(&self) -> &RcForest {
        &self.rc
    }

    /// Segment vertices with their depths, in insertion order.
    pub fn segment(&self) -> &[(usize, u32)] {
        &self.segment
    }

    pub fn in_segment(&self, v: usize) -> bool {
        self.depth[v] != OUT
    }

    pub fn in_q(&self, v: usize) -> bool {
        self.in_q[v]
    }

    /// Component handle for a vertex of `G − T′`.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        (v < self.depth.len() && !self.in_segment(v)).then(|| self.rc.root_of(v) as usize)
    }

    /// A component still holding separator vertices, in O(1).
    pub fn find_cc(&self) -> FindCc {
        match self.rc.first_flagged() {
            Some(c) => FindCc::Component(c),
            None => FindCc::Success,
        }
    }

    /// `(v, x, depth(x))` where `x` is the deepest segment vertex adjacent
    /// to component `c` and `v` its smallest-id neighbour in `c`.
    pub fn lowest_node(&self, c: usize) -> Result<(usize, usize, u32)> {
        self.check_component(c)?;
        match self.rc.low(c) {
            Some(Low { v, x, depth }) => Ok((v as usize, x as usize, depth)),
            None => Err(Error::NoSegmentNeighbour),
        }
    }

    /// Forest path from `x` to a separator vertex of `c`, with no other
    /// separator vertex on it.
    pub fn find_path_s2p(&self, c: usize, x: usize, meter: &mut WorkDepthMeter) -> Result<PathList> {
        self.check_component(c)?;
        let p = self.rc.find_path_s2p(c, x, meter)?;
        Ok(PathList::from_vertices(0, &p))
    }

    fn check_component(&self, c: usize) -> Result<()> {
        if c >= self.depth.len() || self.in_segment(c) {
            return Err(Error::MissingVertex(c));
        }
        if !self.rc.is_root(c) {
            return Err(Error::Precondition("not a component handle"));
        }
        Ok(())
    }

    /// Move `path` into the segment with the given depths.
    pub fn batch_delete(&mut self, path: &[usize], depths: &[u32], meter: &mut WorkDepthMeter) -> Result<()> {
        if depths.len() != path.len() {
            return Err(Error::ValueCount { values: depths.len(), len: path.len() });
        }
        let change = self.forest.delete_vertices(path, meter)?;
        for (&v, &d) in path.iter().zip(depths) {
            self.depth[v] = d;
            self.segment.push((v, d));
        }
        let g = self.forest.graph();
        let mut changed = Vec::new();
        for &y in path {
            for (w, _) in g.incident(y) {
                if self.in_segment(w) {
                    continue;
                }
                let low = better(self.values[w].low, y as u32, self.depth[y]);
                if low != self.values[w].low {
                    self.values[w].low = low;
                    changed.push(w);
                }
            }
        }
        changed.sort_unstable();
        changed.dedup();
        let updates: Vec<(usize, VertexValue)> = changed.iter().map(|&w| (w, self.values[w])).collect();
        meter.round(updates.len() as u64 + path.len() as u64);
        let inserted: Vec<(usize, usize, usize)> = change
            .replacement_edges
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                (e, u, v)
            })
            .collect();
        self.rc.update(&change.removed_tree_edges, path, &inserted, &updates, meter)
    }

    /// Hierarchy rebuilt from scratch over the current spanning forest.
    pub fn rebuild_rc(&self, meter: &mut WorkDepthMeter) -> Result<RcForest> {
        let alive: Vec<bool> = self.depth.iter().map(|&d| d == OUT).collect();
        RcForest::build(self.depth.len(), &alive, &tree_edges(&self.forest), &self.values, self.rc_seed, meter)
    }
}

fn tree_edges(f: &LevelForest<'_>) -> Vec<(usize, usize, usize)> {
    let g = f.graph();
    f.tree_edges()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (e, u, v)
        })
        .collect()
}

/// Keep the deeper of the current low and `(x, depth)`, smaller `x` on ties.
fn better(cur: Option<(u32, u32)>, x: u32, depth: u32) -> Option<(u32, u32)> {
    match cur {
        Some((cx, cd)) if (cd, x) >= (depth, cx) => cur,
        _ => Some((x, depth)),
    }
}
