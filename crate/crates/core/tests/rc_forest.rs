mod common;

use std::collections::VecDeque;

use common::*;
use pardfs_core::forest::{RcForest, VertexValue};
use pardfs_core::WorkDepthMeter;
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Forest edges plus a union-find-free adjacency for BFS.
struct Model {
    n: usize,
    alive: Vec<bool>,
    edges: Vec<(usize, usize, usize)>,
    values: Vec<VertexValue>,
    next_id: usize,
}

impl Model {
    fn adj(&self) -> Vec<Vec<usize>> {
        let mut a = vec![Vec::new(); self.n];
        for &(_, u, v) in &self.edges {
            a[u].push(v);
            a[v].push(u);
        }
        a
    }

    fn bfs_path(&self, x: usize, y: usize) -> Option<Vec<usize>> {
        let a = self.adj();
        let mut prev = vec![usize::MAX; self.n];
        prev[x] = x;
        let mut q = VecDeque::from([x]);
        while let Some(u) = q.pop_front() {
            for &w in &a[u] {
                if prev[w] == usize::MAX {
                    prev[w] = u;
                    q.push_back(w);
                }
            }
        }
        if prev[y] == usize::MAX {
            return None;
        }
        let mut p = vec![y];
        while *p.last().unwrap() != x {
            p.push(prev[*p.last().unwrap()]);
        }
        p.reverse();
        Some(p)
    }

    /// Components of live vertices, each sorted.
    fn components(&self) -> Vec<Vec<usize>> {
        let a = self.adj();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if !self.alive[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in &a[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn fresh(&self, seed: u64) -> RcForest {
        RcForest::build(self.n, &self.alive, &self.edges, &self.values, seed, &mut WorkDepthMeter::new()).unwrap()
    }
}

fn random_forest(n: usize, r: &mut ChaCha8Rng) -> Model {
    let mut edges = Vec::new();
    for v in 1..n {
        if below(r, 5) != 0 {
            edges.push((edges.len(), below(r, v), v));
        }
    }
    let mut values = vec![VertexValue::default(); n];
    for v in values.iter_mut() {
        v.flag = below(r, 12) == 0;
        if below(r, 3) == 0 {
            v.low = Some((below(r, 50) as u32, below(r, 6) as u32));
        }
    }
    let next_id = edges.len();
    Model { n, alive: vec![true; n], edges, values, next_id }
}

fn compare(rc: &RcForest, model: &Model, seed: u64, r: &mut ChaCha8Rng) {
    rc.check().unwrap();
    let fresh = model.fresh(seed);
    assert_eq!(rc.diff(&fresh), None);
    let live: Vec<usize> = (0..model.n).filter(|&v| model.alive[v]).collect();
    let mut m = WorkDepthMeter::new();
    for _ in 0..8 {
        if live.is_empty() {
            break;
        }
        let (x, y) = (live[below(r, live.len())], live[below(r, live.len())]);
        match model.bfs_path(x, y) {
            Some(p) => {
                let got = rc.find_path_p2p(x, y, &mut m).unwrap();
                assert_eq!(got, p);
                assert_eq!(got, fresh.find_path_p2p(x, y, &mut m).unwrap());
            }
            None => assert!(rc.find_path_p2p(x, y, &mut m).is_err()),
        }
    }
    // flags and augmentations per component, against exhaustive scans
    let mut roots = rc.roots();
    roots.sort_unstable();
    let comps = model.components();
    let expect_roots = comps.len();
    for comp in comps {
        let x = comp[0];
        let root = rc.root_of(x) as usize;
        assert!(comp.iter().all(|&v| rc.root_of(v) as usize == root));
        let flagged = comp.iter().any(|&v| model.values[v].flag);
        assert_eq!(rc.flagged(root), flagged);
        let low = comp
            .iter()
            .filter_map(|&v| model.values[v].low.map(|(x, d)| (std::cmp::Reverse(d), x, v)))
            .min()
            .map(|(d, x, v)| (v as u32, x, d.0));
        assert_eq!(rc.low(root).map(|l| (l.v, l.x, l.depth)), low);
        let start = comp[below(r, comp.len())];
        if flagged {
            let p = rc.find_path_s2p(root, start, &mut m).unwrap();
            assert_eq!(p, fresh.find_path_s2p(root, start, &mut m).unwrap());
            assert_eq!(p[0], start);
            assert!(model.values[*p.last().unwrap()].flag);
            assert!(p[..p.len() - 1].iter().all(|&v| !model.values[v].flag));
            assert_eq!(Some(p.clone()), model.bfs_path(start, *p.last().unwrap()));
        } else {
            assert!(rc.find_path_s2p(root, start, &mut m).is_err());
        }
    }
    assert_eq!(roots.len(), expect_roots);
    assert_eq!(rc.first_flagged().is_some(), live.iter().any(|&v| model.values[v].flag));
}

fn fuzz(n: usize, steps: usize, seed: u64) {
    let mut r = rng(seed);
    let mut model = random_forest(n, &mut r);
    let rc_seed = seed.wrapping_mul(31) + 5;
    let mut rc = model.fresh(rc_seed);
    compare(&rc, &model, rc_seed, &mut r);
    let mut meter = WorkDepthMeter::new();
    for _ in 0..steps {
        let mut dels = Vec::new();
        let kd = below(&mut r, 4);
        for _ in 0..kd {
            if model.edges.is_empty() {
                break;
            }
            let i = below(&mut r, model.edges.len());
            dels.push(model.edges.swap_remove(i));
        }
        let del_ids: Vec<usize> = dels.iter().map(|t| t.0).collect();
        // tombstone an endpoint that became isolated
        let mut tombs = Vec::new();
        if below(&mut r, 3) == 0 {
            let a = model.adj();
            if let Some(v) = (0..n).find(|&v| model.alive[v] && a[v].is_empty() && !model.values[v].flag) {
                tombs.push(v);
                model.alive[v] = false;
            }
        }
        let mut ins = Vec::new();
        let ki = below(&mut r, 4);
        for _ in 0..ki {
            let live: Vec<usize> = (0..n).filter(|&v| model.alive[v]).collect();
            if live.len() < 2 {
                break;
            }
            let (u, v) = (live[below(&mut r, live.len())], live[below(&mut r, live.len())]);
            if u != v && model.bfs_path(u, v).is_none() {
                let e = (model.next_id, u, v);
                model.next_id += 1;
                model.edges.push(e);
                ins.push(e);
            }
        }
        let mut vals = Vec::new();
        for _ in 0..below(&mut r, 3) {
            let v = below(&mut r, n);
            if model.alive[v] {
                let mut val = model.values[v];
                val.flag = !val.flag;
                if below(&mut r, 2) == 0 {
                    val.low = Some((below(&mut r, 50) as u32, below(&mut r, 6) as u32));
                }
                model.values[v] = val;
                vals.push((v, val));
            }
        }
        rc.update(&del_ids, &tombs, &ins, &vals, &mut meter).unwrap();
        compare(&rc, &model, rc_seed, &mut r);
    }
}

#[test]
fn leaf_edge_of_p4() {
    let mut model = Model {
        n: 4,
        alive: vec![true; 4],
        edges: vec![(0, 0, 1), (1, 1, 2), (2, 2, 3)],
        values: vec![VertexValue::default(); 4],
        next_id: 3,
    };
    let mut rc = model.fresh(9);
    rc.update(&[2], &[], &[], &[], &mut WorkDepthMeter::new()).unwrap();
    model.edges.pop();
    compare(&rc, &model, 9, &mut rng(1));
}

#[test]
fn random_updates_match_fresh_builds() {
    for seed in 0..8 {
        fuzz(300, 50, seed);
    }
}

#[test]
fn structure_of_random_forests() {
    for seed in 0..20 {
        let mut r = rng(seed + 1000);
        let model = random_forest(200, &mut r);
        let rc = model.fresh(seed);
        compare(&rc, &model, seed, &mut r);
        assert!(rc.height() <= 64, "height {}", rc.height());
    }
}

#[test]
fn long_path_has_logarithmic_height() {
    let n = 1 << 14;
    let edges: Vec<(usize, usize, usize)> = (1..n).map(|v| (v - 1, v - 1, v)).collect();
    let rc = RcForest::build(n, &vec![true; n], &edges, &vec![VertexValue::default(); n], 3, &mut WorkDepthMeter::new())
        .unwrap();
    rc.check().unwrap();
    assert!(rc.height() < 8 * 14, "height {}", rc.height());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn small_update_sequences(n in 1usize..40, steps in 1usize..25, seed in any::<u64>()) {
        fuzz(n, steps, seed);
    }
}
