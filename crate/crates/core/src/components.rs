//! Connected components of vertex-induced subgraphs.

use alloc::vec::Vec;

use crate::{Graph, WorkDepthMeter};

const NONE: u32 = u32::MAX;

/// Component labels over `V ∖ removed`.
///
/// Labels are dense in `0..count()`, numbered by smallest member vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CcLabeling {
    label: Vec<u32>,
    sizes: Vec<usize>,
}

impl CcLabeling {
    pub fn label(&self, v: usize) -> Option<usize> {
        let l = self.label[v];
        (l != NONE).then_some(l as usize)
    }

    pub fn labels(&self) -> impl Iterator<Item = Option<usize>> + '_ {
        self.label.iter().map(|&l| (l != NONE).then_some(l as usize))
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn max_size(&self) -> usize {
        self.sizes.iter().copied().max().unwrap_or(0)
    }

    /// Members of every component, each list ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (v, &l) in self.label.iter().enumerate() {
            if l != NONE {
                out[l as usize].push(v);
            }
        }
        out
    }
}

/// Components of `g − removed` by rounds of hooking roots onto smaller
/// neighbouring roots followed by pointer-jumping shortcuts.
///
/// `removed` is indexed by vertex; `None` removes nothing.
pub fn connected_components(g: &Graph, removed: Option<&[bool]>, meter: &mut WorkDepthMeter) -> CcLabeling {
    let n = g.n();
    let live = |v: usize| removed.is_none_or(|r| !r[v]);
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut hook = vec![NONE; n];
    loop {
        let mut hooked = false;
        for (u, v) in g.edges() {
            if !live(u) || !live(v) {
                continue;
            }
            let (ru, rv) = (parent[u], parent[v]);
            if ru == rv {
                continue;
            }
            let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
            let slot = &mut hook[hi as usize];
            if *slot == NONE || lo < *slot {
                *slot = lo;
            }
            hooked = true;
        }
        meter.round((n + g.m()) as u64);
        if !hooked {
            break;
        }
        for r in 0..n {
            if hook[r] != NONE {
                parent[r] = hook[r];
                hook[r] = NONE;
            }
        }
        // shortcut every vertex to its root
        loop {
            let mut moved = false;
            for v in 0..n {
                let p = parent[v] as usize;
                let gp = parent[p];
                if gp != p as u32 {
                    parent[v] = gp;
                    moved = true;
                }
            }
            meter.round(n as u64);
            if !moved {
                break;
            }
        }
    }
    let mut label = vec![NONE; n];
    let mut sizes = Vec::new();
    let mut root_label = vec![NONE; n];
    for v in 0..n {
        if !live(v) {
            continue;
        }
        let r = parent[v] as usize;
        if root_label[r] == NONE {
            root_label[r] = sizes.len() as u32;
            sizes.push(0);
        }
        label[v] = root_label[r];
        sizes[root_label[r] as usize] += 1;
    }
    meter.round(n as u64);
    CcLabeling { label, sizes }
}
