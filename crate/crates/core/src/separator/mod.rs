//! Path separators: vertex-disjoint paths whose removal leaves components
//! of at most half the vertices.
//!
//! Construction starts from `n` singleton paths and repeatedly reduces the
//! count: the longest quarter of the paths grow toward the rest through
//! unused vertices, absorbing half of every short path they reach.

mod contract;
mod join;
mod merge;

use alloc::vec::Vec;

pub use contract::ContractedGraph;
pub use join::{apply_joins, Joins};
pub use merge::{match_heads, merge_paths, merge_paths_with, LongOutcome, MatchState, MergeReport, VertexState};

use crate::components::connected_components;
use crate::meter::log_rounds;
use crate::mix::derive_seed;
use crate::{Error, Graph, PathList, Result, WorkDepthMeter};

/// Paths of `q` as vertex vectors.
pub fn to_vecs(q: &[PathList]) -> Vec<Vec<usize>> {
    q.iter().map(PathList::to_vec).collect()
}

/// Number index paths as lists.
pub fn to_lists(q: &[Vec<usize>]) -> Vec<PathList> {
    q.iter().enumerate().map(|(i, p)| PathList::from_vertices(i, p)).collect()
}

/// One singleton path per vertex.
pub fn build_trivial_separator(g: &Graph) -> Vec<PathList> {
    (0..g.n()).map(|v| PathList::from_vertices(v, &[v])).collect()
}

/// Whether removing all path vertices leaves components of size at most `n/2`.
///
/// Errors if two paths share a vertex.
pub fn is_separator(g: &Graph, q: &[PathList], meter: &mut WorkDepthMeter) -> Result<bool> {
    separates(g, q.iter().map(|p| p.iter()), meter)
}

/// [`is_separator`] over any collection of vertex sequences.
pub fn separates<I, P>(g: &Graph, paths: I, meter: &mut WorkDepthMeter) -> Result<bool>
where
    I: IntoIterator<Item = P>,
    P: IntoIterator<Item = usize>,
{
    let n = g.n();
    let mut removed = vec![false; n];
    for p in paths {
        for v in p {
            if v >= n {
                return Err(Error::VertexOutOfRange { id: v, n });
            }
            if removed[v] {
                return Err(Error::OverlappingPaths(v));
            }
            removed[v] = true;
        }
    }
    let cc = connected_components(g, Some(&removed), meter);
    Ok(2 * cc.max_size() <= n)
}

/// Long/short split: the `floor(k/4)` longest paths, ties by smaller index,
/// are long. Returns `(long, short)` index lists in ascending index order.
pub fn split_long_short(paths: &[Vec<usize>]) -> (Vec<usize>, Vec<usize>) {
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by(|&a, &b| paths[b].len().cmp(&paths[a].len()).then(a.cmp(&b)));
    let cut = paths.len() / 4;
    let mut long = order[..cut].to_vec();
    let mut short = order[cut..].to_vec();
    long.sort_unstable();
    short.sort_unstable();
    (long, short)
}

/// How a reduction ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceExit {
    /// At least a quarter of the paths were used up as short paths.
    ShortsRemoved,
    /// Too few connectors reached short paths; kept the joined long paths,
    /// the connectors and all short paths.
    FewMatchedKeepShorts,
    /// Too few connectors reached short paths; kept all long paths, the
    /// connectors and the reached short paths.
    FewMatchedKeepLongs,
    /// Dropping the cut long-path tails broke the separator; kept all long
    /// paths, the connectors and the reached short paths.
    DiscardedTails,
    /// Ran out of inner rounds.
    RoundLimit,
}

/// Outcome of [`reduce_paths`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub paths: Vec<PathList>,
    pub exit: ReduceExit,
    pub inner_rounds: usize,
}

/// Replace a separator of `k > 48·floor(sqrt n)` paths by one of at most
/// `47k/48` paths.
pub fn reduce_paths(g: &Graph, q: &[PathList], seed: u64, meter: &mut WorkDepthMeter) -> Result<Reduction> {
    let n = g.n();
    let k = q.len();
    let root = n.isqrt();
    if k <= 48 * root {
        return Err(Error::Precondition("reduction needs more than 48·sqrt(n) paths"));
    }
    if !is_separator(g, q, meter)? {
        return Err(Error::Precondition("input paths are not a separator"));
    }
    let all = to_vecs(q);
    let (li, si) = split_long_short(&all);
    let mut longs: Vec<Vec<usize>> = li.iter().map(|&i| all[i].clone()).collect();
    let mut shorts: Vec<Vec<usize>> = si.iter().map(|&i| all[i].clone()).collect();
    let threshold = root.min(k / 48 + 1);
    let cap = 9 * log_rounds(n) as usize;
    let mut removed = 0usize;
    for round in 0..cap {
        let report = merge_paths_with(g, &longs, &shorts, threshold, derive_seed(seed, round as u64), meter)?;
        let joins = apply_joins(&longs, &shorts, &report, meter)?;
        let interiors: Vec<&[usize]> = joins.connector_interiors().collect();
        let done = |paths: Vec<Vec<usize>>, exit| Reduction { paths: to_lists(&paths), exit, inner_rounds: round + 1 };
        if 12 * joins.p1.len() < k {
            let joined = joins.l_hat1.iter().chain(&joins.l_hat2).map(|&i| longs[i].clone());
            let keep_shorts: Vec<Vec<usize>> =
                joined.chain(interiors.iter().map(|p| p.to_vec())).chain(shorts.iter().cloned()).collect();
            if separates(g, keep_shorts.iter().map(|p| p.iter().copied()), meter)? {
                return Ok(done(keep_shorts, ReduceExit::FewMatchedKeepShorts));
            }
            let keep_longs = with_reached_shorts(&longs, &interiors, &shorts, &joins.s_hat);
            if separates(g, keep_longs.iter().map(|p| p.iter().copied()), meter)? {
                return Ok(done(keep_longs, ReduceExit::FewMatchedKeepLongs));
            }
            return Err(Error::InvariantViolation("neither fallback after a weak matching separates"));
        }
        let next: Vec<&Vec<usize>> = joins.long.iter().chain(joins.short.iter().filter(|s| !s.is_empty())).collect();
        if !separates(g, next.iter().map(|p| p.iter().copied()), meter)? {
            let keep_longs = with_reached_shorts(&longs, &interiors, &shorts, &joins.s_hat);
            if separates(g, keep_longs.iter().map(|p| p.iter().copied()), meter)? {
                return Ok(done(keep_longs, ReduceExit::DiscardedTails));
            }
            return Err(Error::InvariantViolation("fallback after discarding tails does not separate"));
        }
        removed += joins.emptied();
        longs = joins.long;
        shorts = joins.short.into_iter().filter(|s| !s.is_empty()).collect();
        if 4 * removed >= k {
            let paths: Vec<Vec<usize>> = longs.into_iter().chain(shorts).collect();
            return Ok(done(paths, ReduceExit::ShortsRemoved));
        }
    }
    let paths: Vec<Vec<usize>> = longs.into_iter().chain(shorts).collect();
    Ok(Reduction { paths: to_lists(&paths), exit: ReduceExit::RoundLimit, inner_rounds: cap })
}

fn with_reached_shorts(longs: &[Vec<usize>], interiors: &[&[usize]], shorts: &[Vec<usize>], s_hat: &[usize]) -> Vec<Vec<usize>> {
    longs
        .iter()
        .cloned()
        .chain(interiors.iter().map(|p| p.to_vec()))
        .chain(s_hat.iter().map(|&i| shorts[i].clone()))
        .collect()
}

/// A separator together with the path count after every reduction.
#[derive(Clone, Debug)]
pub struct Separator {
    pub paths: Vec<PathList>,
    /// Path counts, starting with `n` and ending with `paths.len()`.
    pub counts: Vec<usize>,
    pub exits: Vec<ReduceExit>,
}

/// A separator of at most `48·floor(sqrt n)` paths for a connected graph.
pub fn find_separator(g: &Graph, seed: u64, meter: &mut WorkDepthMeter) -> Result<Separator> {
    let n = g.n();
    if n > 0 && connected_components(g, None, meter).count() > 1 {
        return Err(Error::Disconnected);
    }
    let mut q = build_trivial_separator(g);
    let mut counts = vec![q.len()];
    let mut exits = Vec::new();
    let bound = 48 * n.isqrt();
    let mut call = 0u64;
    while q.len() > bound {
        let r = reduce_paths(g, &q, derive_seed(seed, 1_000_000 + call), meter)?;
        if r.paths.len() >= q.len() {
            return Err(Error::InvariantViolation("path reduction made no progress"));
        }
        q = r.paths;
        counts.push(q.len());
        exits.push(r.exit);
        call += 1;
    }
    Ok(Separator { paths: q, counts, exits })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn trivial_separator_shapes() {
        let g = path(5);
        let q = build_trivial_separator(&g);
        assert_eq!(q.len(), 5);
        assert!(q.iter().all(|p| p.len() == 1));
        assert!(is_separator(&g, &q, &mut WorkDepthMeter::new()).unwrap());
        assert_eq!(build_trivial_separator(&path(1)).len(), 1);
    }

    #[test]
    fn p9_middle_separates() {
        let g = path(9);
        let q = [PathList::from_vertices(0, &[4])];
        assert!(is_separator(&g, &q, &mut WorkDepthMeter::new()).unwrap());
    }

    #[test]
    fn k4_empty_does_not_separate() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!is_separator(&g, &[], &mut WorkDepthMeter::new()).unwrap());
    }

    #[test]
    fn overlap_is_an_error() {
        let g = path(4);
        let q = [PathList::from_vertices(0, &[0, 1]), PathList::from_vertices(1, &[1, 2])];
        assert_eq!(is_separator(&g, &q, &mut WorkDepthMeter::new()), Err(Error::OverlappingPaths(1)));
    }

    #[test]
    fn split_prefers_long_then_low_index() {
        let paths = vec![vec![0], vec![1, 2, 3], vec![4], vec![5, 6], vec![7], vec![8, 9], vec![10], vec![11]];
        let (l, s) = split_long_short(&paths);
        assert_eq!(l, vec![1, 3]);
        assert_eq!(s, vec![0, 2, 4, 5, 6, 7]);
    }

    #[test]
    fn small_graphs_keep_the_trivial_separator() {
        let g = path(2304);
        let s = find_separator(&g, 1, &mut WorkDepthMeter::new()).unwrap();
        assert_eq!(s.paths.len(), 2304);
        assert_eq!(s.counts, vec![2304]);
    }

    #[test]
    fn reduction_precondition() {
        let g = path(100);
        let q = build_trivial_separator(&g);
        assert!(matches!(reduce_paths(&g, &q, 0, &mut WorkDepthMeter::new()), Err(Error::Precondition(_))));
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(find_separator(&g, 0, &mut WorkDepthMeter::new()).err(), Some(Error::Disconnected));
    }

    #[test]
    fn long_path_reduces() {
        let g = path(5000);
        let mut m = WorkDepthMeter::new();
        let s = find_separator(&g, 7, &mut m).unwrap();
        assert!(s.paths.len() <= 48 * 70);
        assert!(is_separator(&g, &s.paths, &mut m).unwrap());
        for w in s.counts.windows(2) {
            assert!(48 * w[1] <= 47 * w[0]);
        }
    }
}
