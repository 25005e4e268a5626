use super::InitialSegment;
use crate::forest::{FindCc, SegmentOracleState};
use crate::path::take_longer_half;
use crate::{Error, Graph, PathList, Result, WorkDepthMeter};

const NONE: u32 = u32::MAX;

/// Counters of one absorption run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AbsorbStats {
    pub iterations: usize,
    pub absorbed: usize,
}

/// Grow `seg` until it contains every vertex of the separator `q`.
///
/// Each iteration takes a component of `G − T′` that still meets `q`,
/// hangs the forest path from its deepest attachment to the nearest
/// separator vertex below the segment, continues along the longer half of
/// that separator path and removes the chain from `st`. `q` keeps the
/// unabsorbed remainders. `after_step` runs after every iteration.
pub fn absorb_separator(
    g: &Graph,
    q: &mut [PathList],
    seg: &mut InitialSegment,
    st: &mut SegmentOracleState<'_>,
    meter: &mut WorkDepthMeter,
    after_step: &mut dyn FnMut(&InitialSegment, &SegmentOracleState<'_>) -> Result<()>,
) -> Result<AbsorbStats> {
    let n = g.n();
    let mut path_of = vec![NONE; n];
    for (i, p) in q.iter().enumerate() {
        for v in p.iter() {
            if seg.contains(v) {
                return Err(Error::OverlappingPaths(v));
            }
            if path_of[v] != NONE {
                return Err(Error::DuplicateVertex(v));
            }
            path_of[v] = i as u32;
        }
    }
    meter.round(n as u64);
    let mut stats = AbsorbStats::default();
    loop {
        let c = match st.find_cc() {
            FindCc::Success => break,
            FindCc::Component(c) => c,
        };
        let (v, x, _) = st.lowest_node(c)?;
        let p = st.find_path_s2p(c, v, meter)?;
        let end = p.tail().ok_or(Error::EmptyPath)?;
        let idx = path_of[end];
        if idx == NONE {
            return Err(Error::InvariantViolation("separator path ends outside q"));
        }
        let idx = idx as usize;
        let (taken, rest) = take_longer_half(&q[idx], end, meter)?;
        let mut chain = p.to_vec();
        chain.extend_from_slice(&taken[1..]);
        for &t in &taken {
            path_of[t] = NONE;
        }
        q[idx] = PathList::from_vertices(idx, &rest);
        let depths = seg.attach_path(g, &PathList::from_vertices(0, &chain), x, meter)?;
        st.batch_delete(&chain, &depths, meter)?;
        stats.iterations += 1;
        stats.absorbed += chain.len();
        after_step(seg, st)?;
    }
    if let Some(v) = (0..n).find(|&v| path_of[v] != NONE) {
        return Err(Error::MissingVertex(v));
    }
    Ok(stats)
}
