use alloc::vec::Vec;

use crate::{Error, Graph, Result, WorkDepthMeter};

const FREE: u32 = u32::MAX;

/// `G` with every short path collapsed to one vertex.
///
/// Vertex ids `0..n` are the original vertices; short path `j` becomes
/// vertex `n + j`. Members of short paths stay as isolated vertices so that
/// ids never need translating. Parallel edges are merged, keeping the
/// smallest originating edge id.
#[derive(Clone, Debug)]
pub struct ContractedGraph {
    graph: Graph,
    base_n: usize,
    image: Vec<u32>,
    members: Vec<Vec<usize>>,
    provenance: Vec<u32>,
}

impl ContractedGraph {
    pub fn new(g: &Graph, shorts: &[Vec<usize>], meter: &mut WorkDepthMeter) -> Result<Self> {
        let n = g.n();
        let mut image: Vec<u32> = (0..n as u32).collect();
        let mut owner = vec![FREE; n];
        for (j, s) in shorts.iter().enumerate() {
            for &v in s {
                if v >= n {
                    return Err(Error::VertexOutOfRange { id: v, n });
                }
                if owner[v] != FREE {
                    return Err(Error::OverlappingPaths(v));
                }
                owner[v] = j as u32;
                image[v] = (n + j) as u32;
            }
        }
        let mut triples: Vec<(u32, u32, u32)> = Vec::with_capacity(g.m());
        for (e, (u, v)) in g.edges().enumerate() {
            let (a, b) = (image[u], image[v]);
            if a != b {
                triples.push((a.min(b), a.max(b), e as u32));
            }
        }
        triples.sort_unstable();
        triples.dedup_by_key(|t| (t.0, t.1));
        let provenance = triples.iter().map(|t| t.2).collect();
        let graph = Graph::from_checked(n + shorts.len(), triples.iter().map(|t| (t.0, t.1)).collect());
        meter.work((n + g.m()) as u64 * crate::meter::log_rounds(g.m().max(2)));
        meter.rounds_add(crate::meter::log_rounds(g.m().max(2)));
        Ok(ContractedGraph { graph, base_n: n, image, members: shorts.to_vec(), provenance })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Vertex of `G′` that original vertex `v` maps to.
    pub fn image(&self, v: usize) -> usize {
        self.image[v] as usize
    }

    /// Short path index of a contracted vertex.
    pub fn short_of(&self, w: usize) -> Option<usize> {
        (w >= self.base_n).then(|| w - self.base_n)
    }

    pub fn members(&self, short: usize) -> &[usize] {
        &self.members[short]
    }

    /// Original edge behind `G′` edge `e`.
    pub fn provenance(&self, e: usize) -> usize {
        self.provenance[e] as usize
    }

    /// The member of short path `short` that original vertex `u` reaches
    /// through the recorded edge, if `u` is adjacent to the path.
    pub fn attach_point(&self, g: &Graph, u: usize, short: usize) -> Option<usize> {
        let target = self.base_n + short;
        let (_, e) = self.graph.incident(u).find(|&(w, _)| w == target)?;
        let (a, b) = g.endpoints(self.provenance(e));
        Some(if a == u { b } else { a })
    }
}
