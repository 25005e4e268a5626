//! Maximal matching by rounds of locally heaviest random-priority edges.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{Graph, WorkDepthMeter};

const NONE: u32 = u32::MAX;

/// Maximal matching of an edge list over vertices `0..n`.
///
/// Every edge draws a priority from `seed`. In each round an edge joins the
/// matching when it has the top priority at both endpoints; matched
/// vertices then retire their edges. Returns indices into `edges`, in the
/// order they were selected.
pub fn maximal_matching_edges(n: usize, edges: &[(u32, u32)], seed: u64, meter: &mut WorkDepthMeter) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prio: Vec<u64> = edges.iter().map(|_| rng.next_u64()).collect();
    let key = |e: u32| (prio[e as usize], e);
    let mut alive: Vec<u32> = (0..edges.len() as u32).filter(|&e| edges[e as usize].0 != edges[e as usize].1).collect();
    let mut best = vec![NONE; n];
    let mut matched = vec![false; n];
    let mut out = Vec::new();
    while !alive.is_empty() {
        for &e in &alive {
            let (u, v) = edges[e as usize];
            for w in [u as usize, v as usize] {
                if best[w] == NONE || key(e) > key(best[w]) {
                    best[w] = e;
                }
            }
        }
        for &e in &alive {
            let (u, v) = edges[e as usize];
            if best[u as usize] == e && best[v as usize] == e {
                matched[u as usize] = true;
                matched[v as usize] = true;
                out.push(e as usize);
            }
        }
        meter.round(alive.len() as u64);
        for &e in &alive {
            let (u, v) = edges[e as usize];
            best[u as usize] = NONE;
            best[v as usize] = NONE;
        }
        alive.retain(|&e| {
            let (u, v) = edges[e as usize];
            !matched[u as usize] && !matched[v as usize]
        });
    }
    out
}

/// Maximal matching of `g`, as edge ids.
pub fn maximal_matching(g: &Graph, seed: u64, meter: &mut WorkDepthMeter) -> Vec<usize> {
    let edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (u as u32, v as u32)).collect();
    maximal_matching_edges(g.n(), &edges, seed, meter)
}
