mod common;

use common::*;
use pardfs_core::separator::{find_separator, is_separator, reduce_paths, build_trivial_separator};
use pardfs_core::{Graph, PathList, WorkDepthMeter};

fn check_paths(g: &Graph, q: &[PathList]) {
    let mut used = vec![false; g.n()];
    for p in q {
        let v = p.to_vec();
        assert!(!v.is_empty());
        for w in v.windows(2) {
            assert!(g.has_edge(w[0], w[1]), "{:?} not an edge", w);
        }
        for &x in &v {
            assert!(!used[x], "vertex {x} on two paths");
            used[x] = true;
        }
    }
    assert!(2 * largest_component(g, &used) <= g.n());
}

#[test]
fn cycle_5000_one_reduction() {
    let g = cycle(5000);
    let mut m = WorkDepthMeter::new();
    let r = reduce_paths(&g, &build_trivial_separator(&g), 3, &mut m).unwrap();
    assert!(r.paths.len() <= 4896, "{}", r.paths.len());
    assert!(is_separator(&g, &r.paths, &mut m).unwrap());
    check_paths(&g, &r.paths);
}

#[test]
fn random_6000_one_reduction() {
    let g = connected(6000, 12000, 11);
    let mut m = WorkDepthMeter::new();
    let r = reduce_paths(&g, &build_trivial_separator(&g), 5, &mut m).unwrap();
    assert!(48 * r.paths.len() <= 47 * 6000, "{}", r.paths.len());
    check_paths(&g, &r.paths);
}

#[test]
fn grid_80_by_80() {
    let g = grid(80, 80);
    let mut m = WorkDepthMeter::new();
    let s = find_separator(&g, 2, &mut m).unwrap();
    assert!(s.paths.len() <= 3840);
    check_paths(&g, &s.paths);
    eprintln!("grid counts {:?} exits {:?}", s.counts, s.exits);
}

#[test]
fn path_5000() {
    let g = path(5000);
    let s = find_separator(&g, 9, &mut WorkDepthMeter::new()).unwrap();
    assert!(s.paths.len() <= 48 * 70);
    check_paths(&g, &s.paths);
}

#[test]
fn random_large_shrinks_monotonically() {
    for (i, &n) in [3000usize, 20000, 50000].iter().enumerate() {
        let g = connected(n, 3 * n, 100 + i as u64);
        let t = std::time::Instant::now();
        let mut m = WorkDepthMeter::new();
        let s = find_separator(&g, i as u64, &mut m).unwrap();
        eprintln!("n={n} counts {:?} exits {:?} rounds {} work {} in {:?}", s.counts, s.exits, m.rounds(), m.work_units(), t.elapsed());
        assert!(s.paths.len() <= 48 * n.isqrt());
        for w in s.counts.windows(2) {
            assert!(48 * w[1] <= 47 * w[0]);
        }
        check_paths(&g, &s.paths);
    }
}
