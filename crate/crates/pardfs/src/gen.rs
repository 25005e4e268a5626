//! Deterministic graph generators.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use pardfs_core::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Path,
    Cycle,
    Grid,
    RandomGnmConnected,
    RandomTree,
    Star,
    Complete,
    Lollipop,
}

impl GenKind {
    pub const ALL: [GenKind; 8] = [
        GenKind::Path,
        GenKind::Cycle,
        GenKind::Grid,
        GenKind::RandomGnmConnected,
        GenKind::RandomTree,
        GenKind::Star,
        GenKind::Complete,
        GenKind::Lollipop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Path => "path",
            GenKind::Cycle => "cycle",
            GenKind::Grid => "grid",
            GenKind::RandomGnmConnected => "random-gnm-connected",
            GenKind::RandomTree => "random-tree",
            GenKind::Star => "star",
            GenKind::Complete => "complete",
            GenKind::Lollipop => "lollipop",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .with_context(|| format!("unknown generator {s:?}; expected one of {}", names()))
    }
}

fn names() -> String {
    GenKind::ALL.map(GenKind::name).join(", ")
}

/// Size parameters. `extra` holds `key=value` pairs such as `w`, `h` for
/// grids or `clique` for lollipops.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GenParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub extra: BTreeMap<String, usize>,
}

impl GenParams {
    pub fn n(n: usize) -> Self {
        GenParams { n: Some(n), ..Self::default() }
    }

    pub fn nm(n: usize, m: usize) -> Self {
        GenParams { n: Some(n), m: Some(m), ..Self::default() }
    }

    pub fn with(mut self, key: &str, value: usize) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    /// Parse `key=value,key=value`.
    pub fn parse_extra(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').with_context(|| format!("parameter {item:?} is not key=value"))?;
            let v: usize = v.trim().parse().with_context(|| format!("parameter {k} needs an integer"))?;
            match k.trim() {
                "n" => self.n = Some(v),
                "m" => self.m = Some(v),
                k => {
                    self.extra.insert(k.to_string(), v);
                }
            }
        }
        Ok(())
    }

    fn need_n(&self, kind: GenKind) -> Result<usize> {
        self.n.with_context(|| format!("{kind} needs n"))
    }
}

/// Build a graph of the given kind; equal inputs give equal graphs.
pub fn generate(kind: GenKind, p: &GenParams, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = match kind {
        GenKind::Path => {
            let n = p.need_n(kind)?;
            ensure!(n >= 1, "path needs n >= 1");
            return Ok(Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))?);
        }
        GenKind::Cycle => {
            let n = p.need_n(kind)?;
            ensure!(n >= 3, "cycle needs n >= 3");
            (0..n).map(|v| (v, (v + 1) % n)).collect()
        }
        GenKind::Grid => {
            let (w, h) = grid_dims(p)?;
            let id = |x: usize, y: usize| y * w + x;
            let mut e = Vec::with_capacity(2 * w * h);
            for y in 0..h {
                for x in 0..w {
                    if x + 1 < w {
                        e.push((id(x, y), id(x + 1, y)));
                    }
                    if y + 1 < h {
                        e.push((id(x, y), id(x, y + 1)));
                    }
                }
            }
            return Ok(Graph::from_edges(w * h, e)?);
        }
        GenKind::RandomGnmConnected => {
            let n = p.need_n(kind)?;
            ensure!(n >= 1, "random-gnm-connected needs n >= 1");
            let max = n * (n - 1) / 2;
            let m = p.m.unwrap_or_else(|| (2 * n).min(max).max(n - 1));
            ensure!(m + 1 >= n, "m = {m} cannot connect {n} vertices");
            ensure!(m <= max, "m = {m} exceeds the {max} possible edges on {n} vertices");
            return Ok(Graph::from_edges(n, connected_gnm(n, m, &mut rng))?);
        }
        GenKind::RandomTree => {
            let n = p.need_n(kind)?;
            ensure!(n >= 1, "random-tree needs n >= 1");
            random_tree(n, &mut rng)
        }
        GenKind::Star => {
            let n = p.need_n(kind)?;
            ensure!(n >= 1, "star needs n >= 1");
            (1..n).map(|v| (0, v)).collect()
        }
        GenKind::Complete => {
            let n = p.need_n(kind)?;
            ensure!(n >= 1, "complete needs n >= 1");
            ensure!(n <= 20_000, "complete graph on {n} vertices is too large");
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
        }
        GenKind::Lollipop => {
            let n = p.need_n(kind)?;
            let k = p.extra.get("clique").copied().unwrap_or((n / 2).max(1));
            ensure!(k >= 1 && k <= n, "lollipop clique size {k} must lie in 1..={n}");
            ensure!(k <= 20_000, "clique of {k} vertices is too large");
            // clique on 0..k, tail k-1, k, k+1, ..., n-1
            let mut e: Vec<(usize, usize)> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
            e.extend((k..n).map(|v| (v - 1, v)));
            e
        }
    };
    Ok(Graph::from_edges(p.need_n(kind)?, edges)?)
}

fn grid_dims(p: &GenParams) -> Result<(usize, usize)> {
    match (p.extra.get("w"), p.extra.get("h"), p.n) {
        (Some(&w), Some(&h), _) => {
            ensure!(w >= 1 && h >= 1, "grid sides must be positive");
            Ok((w, h))
        }
        (None, None, Some(n)) if n >= 1 && n.isqrt() * n.isqrt() == n => Ok((n.isqrt(), n.isqrt())),
        (None, None, Some(n)) => bail!("grid with n = {n} needs w and h (n is not a square)"),
        _ => bail!("grid needs both w and h, or a square n"),
    }
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    (1..n).map(|i| (order[rng.random_range(0..i)], order[i])).collect()
}

/// Random spanning tree plus distinct random extra edges up to `m`.
fn connected_gnm(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = random_tree(n, rng);
    let key = |u: usize, v: usize| if u < v { (u, v) } else { (v, u) };
    let mut have: HashSet<(usize, usize)> = edges.iter().map(|&(u, v)| key(u, v)).collect();
    let max = n * (n - 1) / 2;
    if 2 * m > max {
        // dense: draw from the explicit complement
        let mut rest: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|e| !have.contains(e)).collect();
        rest.shuffle(rng);
        edges.extend(rest.into_iter().take(m - edges.len()));
        return edges;
    }
    while edges.len() < m {
        let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
        if u != v && have.insert(key(u, v)) {
            edges.push((u, v));
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in GenKind::ALL {
            assert_eq!(k.name().parse::<GenKind>().unwrap(), k);
        }
        assert!("tree".parse::<GenKind>().is_err());
    }

    #[test]
    fn params_parse() {
        let mut p = GenParams::default();
        p.parse_extra("w=3, h=4,n=12").unwrap();
        assert_eq!((p.n, p.extra["w"], p.extra["h"]), (Some(12), 3, 4));
        assert!(p.parse_extra("w").is_err());
        assert!(p.parse_extra("w=x").is_err());
    }
}
