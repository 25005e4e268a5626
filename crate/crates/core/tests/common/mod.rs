#![allow(dead_code)]

use pardfs_core::Graph;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn below(r: &mut ChaCha8Rng, n: usize) -> usize {
    (r.next_u64() % n as u64) as usize
}

/// Random spanning tree plus extra random edges; connected, no self-loops.
pub fn connected(n: usize, m: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::with_capacity(m.max(n.saturating_sub(1)));
    for v in 1..n {
        edges.push((below(&mut r, v), v));
    }
    while edges.len() < m {
        let (u, v) = (below(&mut r, n), below(&mut r, n));
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random graph, possibly disconnected.
pub fn gnm(n: usize, m: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m && n > 1 {
        let (u, v) = (below(&mut r, n), below(&mut r, n));
        if u != v {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn grid(w: usize, h: usize) -> Graph {
    let id = |x: usize, y: usize| y * w + x;
    let mut edges = Vec::new();
    for y in 0..h {
        for x in 0..w {
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::from_edges(w * h, edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Union-find component labels, independent of the library.
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
            if a != b {
                p[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|v| (!removed[v]).then(|| find(&mut p, v))).collect()
}

/// Largest component of `g − removed`, by plain BFS.
pub fn largest_component(g: &Graph, removed: &[bool]) -> usize {
    let mut seen = removed.to_vec();
    let mut best = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut stack = vec![s];
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for u in g.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        best = best.max(size);
    }
    best
}
