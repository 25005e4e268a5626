//! Immutable undirected graph in compressed adjacency form.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Undirected multigraph without self-loops.
///
/// Vertices are `0..n`, edges `0..m`. Every edge appears in the adjacency
/// of both endpoints together with its id, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    edge_of: Vec<u32>,
    endpoints: Vec<(u32, u32)>,
}

impl Graph {
    /// Build from 0-based endpoint pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut endpoints = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { id: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { id: v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            endpoints.push((u as u32, v as u32));
        }
        Ok(Self::from_checked(n, endpoints))
    }

    pub(crate) fn from_checked(n: usize, endpoints: Vec<(u32, u32)>) -> Self {
        let mut degree = vec![0usize; n + 1];
        for &(u, v) in &endpoints {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        offsets.push(0);
        for d in &degree[..n] {
            acc += d;
            offsets.push(acc);
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; acc];
        let mut edge_of = vec![0u32; acc];
        for (e, &(u, v)) in endpoints.iter().enumerate() {
            let (u, v) = (u as usize, v as usize);
            targets[fill[u]] = v as u32;
            edge_of[fill[u]] = e as u32;
            fill[u] += 1;
            targets[fill[v]] = u as u32;
            edge_of[fill[v]] = e as u32;
            fill[v] += 1;
        }
        Graph { offsets, targets, edge_of, endpoints }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.endpoints.len()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.targets[self.offsets[v]..self.offsets[v + 1]].iter().map(|&u| u as usize)
    }

    /// The `i`-th neighbour of `v` in adjacency order.
    #[inline]
    pub fn neighbor_at(&self, v: usize, i: usize) -> Option<usize> {
        let at = self.offsets[v] + i;
        (at < self.offsets[v + 1]).then(|| self.targets[at] as usize)
    }

    /// `(neighbour, edge id)` pairs of `v`.
    #[inline]
    pub fn incident(&self, v: usize) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        let r = self.offsets[v]..self.offsets[v + 1];
        self.targets[r.clone()]
            .iter()
            .zip(&self.edge_of[r])
            .map(|(&u, &e)| (u as usize, e as usize))
    }

    /// Position range of `v` inside the flat adjacency arrays.
    #[inline]
    pub(crate) fn slot_range(&self, v: usize) -> core::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    #[inline]
    pub(crate) fn slot_target(&self, slot: usize) -> usize {
        self.targets[slot] as usize
    }

    #[inline]
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.endpoints[e];
        (u as usize, v as usize)
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.endpoints.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if self.degree(u) <= self.degree(v) {
            self.neighbors(u).any(|w| w == v)
        } else {
            self.neighbors(v).any(|w| w == u)
        }
    }

    /// Subgraph induced by `vertices`; local vertex `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        const ABSENT: u32 = u32::MAX;
        let mut local = vec![ABSENT; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i as u32;
        }
        let mut endpoints = Vec::new();
        for &v in vertices {
            for (u, e) in self.incident(v) {
                // keep each edge once, from its first endpoint
                if self.endpoints[e].0 as usize == v && local[u] != ABSENT {
                    endpoints.push((local[v], local[u]));
                }
            }
        }
        Graph::from_checked(vertices.len(), endpoints)
    }
}

/// Build a graph from 1-based vertex pairs.
pub fn load_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
    let mut zero_based = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        for id in [u, v] {
            if id == 0 || id > n {
                return Err(Error::VertexOutOfRange { id, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        zero_based.push((u - 1, v - 1));
    }
    Graph::from_edges(n, zero_based)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_p3() {
        let g = load_graph(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.degree(1), 2);
        assert!(g.has_edge(0, 1));
        assert!(!g.has_edge(0, 2));
    }

    #[test]
    fn single_isolated_vertex() {
        let g = load_graph(1, &[]).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        assert_eq!(g.degree(0), 0);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(load_graph(1, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            load_graph(2, &[(1, 3)]),
            Err(Error::VertexOutOfRange { id: 3, n: 2 })
        );
        assert!(load_graph(2, &[(0, 1)]).is_err());
    }

    #[test]
    fn adjacency_is_symmetric_with_edge_ids() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3), (0, 1)]).unwrap();
        let mut seen = vec![0; g.m()];
        for v in 0..g.n() {
            for (u, e) in g.incident(v) {
                let (a, b) = g.endpoints(e);
                assert!((a, b) == (u, v) || (a, b) == (v, u));
                seen[e] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 2));
    }

    #[test]
    fn induced_subgraph() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let h = g.induced(&[1, 2, 3]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 2);
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2));
    }
}
