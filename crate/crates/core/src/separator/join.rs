use alloc::vec::Vec;

use super::merge::{LongOutcome, MergeReport};
use crate::path::take_longer_half;
use crate::{Error, PathList, Result, WorkDepthMeter};

/// Paths after rewriting long and short paths along the connectors.
#[derive(Clone, Debug, Default)]
pub struct Joins {
    /// Rewritten long paths, one per input long path.
    pub long: Vec<Vec<usize>>,
    /// Remaining short paths, one per input short path; may be empty.
    pub short: Vec<Vec<usize>>,
    /// Connectors from a junction `x` to a short path vertex `y`, inclusive.
    pub p1: Vec<Vec<usize>>,
    /// Connectors from a junction that did not reach a short path.
    pub p2: Vec<Vec<usize>>,
    /// Indices of long paths joined by a `p1` or `p2` connector.
    pub l_hat1: Vec<usize>,
    pub l_hat2: Vec<usize>,
    /// Indices of short paths that were reached.
    pub s_hat: Vec<usize>,
    /// Vertices cut from joined long paths.
    pub l_star: Vec<usize>,
}

impl Joins {
    /// Connector vertices that lie on no old path, grouped per connector.
    pub fn connector_interiors(&self) -> impl Iterator<Item = &[usize]> {
        let inner1 = self.p1.iter().map(|p| &p[1..p.len() - 1]);
        let inner2 = self.p2.iter().map(|p| &p[1..]);
        inner1.chain(inner2).filter(|s| !s.is_empty())
    }

    /// Number of short paths that became empty.
    pub fn emptied(&self) -> usize {
        self.short.iter().filter(|s| s.is_empty()).count()
    }
}

/// Rewrite `l = l′xl″` into `l′ps′` (reached `s = s′ys″`, `s` becomes `s″`)
/// or into `l′p` (not reached); `l″` is discarded. `s′` is the longer side
/// of `y` by the half-split rule.
pub fn apply_joins(
    longs: &[Vec<usize>],
    shorts: &[Vec<usize>],
    report: &MergeReport,
    meter: &mut WorkDepthMeter,
) -> Result<Joins> {
    if report.outcomes.len() != longs.len() {
        return Err(Error::InvariantViolation("one outcome per long path"));
    }
    let mut j = Joins { short: shorts.to_vec(), ..Joins::default() };
    let mut reached = alloc::vec![false; shorts.len()];
    for (i, out) in report.outcomes.iter().enumerate() {
        match out {
            LongOutcome::Dead => j.long.push(longs[i].clone()),
            LongOutcome::Matched { kept, discarded, ext, short, y } => {
                let s = shorts.get(*short).ok_or(Error::InvariantViolation("connector reaches no short path"))?;
                if reached[*short] {
                    return Err(Error::InvariantViolation("short path reached twice"));
                }
                reached[*short] = true;
                let x = *kept.last().ok_or(Error::EmptyPath)?;
                let (taken, rest) = take_longer_half(&PathList::from_vertices(*short, s), *y, meter)?;
                let mut p = Vec::with_capacity(ext.len() + 2);
                p.push(x);
                p.extend_from_slice(ext);
                p.push(*y);
                let mut l = kept.clone();
                l.extend_from_slice(ext);
                l.extend_from_slice(&taken);
                j.long.push(l);
                j.short[*short] = rest;
                j.p1.push(p);
                j.l_hat1.push(i);
                j.s_hat.push(*short);
                j.l_star.extend_from_slice(discarded);
            }
            LongOutcome::Extended { kept, discarded, ext } => {
                let x = *kept.last().ok_or(Error::EmptyPath)?;
                let mut p = Vec::with_capacity(ext.len() + 1);
                p.push(x);
                p.extend_from_slice(ext);
                let mut l = kept.clone();
                l.extend_from_slice(ext);
                j.long.push(l);
                j.p2.push(p);
                j.l_hat2.push(i);
                j.l_star.extend_from_slice(discarded);
            }
        }
    }
    j.s_hat.sort_unstable();
    meter.round(longs.len() as u64 + j.l_star.len() as u64);
    Ok(j)
}
