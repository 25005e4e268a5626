//! Measured work and rounds against the target bounds.

use std::time::Instant;

use anyhow::{ensure, Result};
use pardfs_core::dfs::{parallel_dfs, DfsConfig};
use pardfs_core::Executor;
use serde::Serialize;

use crate::gen::{generate, GenKind, GenParams};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub work_units: u64,
    pub rounds: u64,
    /// `work_units / (m log2^3 m)`.
    pub work_ratio: f64,
    /// `rounds / (sqrt(n) log2^3 n)`.
    pub rounds_ratio: f64,
    pub wall_ms: u128,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingTable {
    pub rows: Vec<ScalingRow>,
    /// Largest over smallest per-size mean ratio.
    pub work_spread: f64,
    pub rounds_spread: f64,
    /// Least-squares log-log slopes of work against `m log^3 m` and of
    /// rounds against `sqrt(n) log^3 n`; 1 means the bound's growth rate.
    pub work_slope: Option<f64>,
    pub rounds_slope: Option<f64>,
}

fn log3(x: f64) -> f64 {
    x.log2().max(1.0).powi(3)
}

pub fn work_bound(m: usize) -> f64 {
    m.max(2) as f64 * log3(m.max(2) as f64)
}

pub fn rounds_bound(n: usize) -> f64 {
    (n.max(2) as f64).sqrt() * log3(n.max(2) as f64)
}

/// `(log target / log base)^3`, the allowance for polylog growth between
/// two sizes.
pub fn polylog_correction(base: usize, target: usize) -> f64 {
    ((target.max(2) as f64).log2() / (base.max(2) as f64).log2()).powi(3)
}

/// Run the parallel DFS on `kind` graphs with `m = m_factor·n` for every
/// size and seed.
pub fn scaling_suite<E: Executor>(
    sizes: &[usize],
    seeds: &[u64],
    kind: GenKind,
    m_factor: usize,
    cutoff: usize,
    exec: &E,
) -> Result<ScalingTable> {
    ensure!(sizes.windows(2).all(|w| w[0] < w[1]), "sizes must be strictly ascending");
    ensure!(!seeds.is_empty(), "need at least one seed");
    let mut rows = Vec::new();
    for &n in sizes {
        for &seed in seeds {
            let g = generate(kind, &GenParams::nm(n, m_factor * n), seed)?;
            let cfg = DfsConfig { cutoff, seed, check_segments: false };
            let t = Instant::now();
            let r = parallel_dfs(&g, 0, &cfg, exec)?;
            let wall_ms = t.elapsed().as_millis();
            rows.push(ScalingRow {
                n: g.n(),
                m: g.m(),
                seed,
                work_units: r.meter.work_units(),
                rounds: r.meter.rounds(),
                work_ratio: r.meter.work_units() as f64 / work_bound(g.m()),
                rounds_ratio: r.meter.rounds() as f64 / rounds_bound(g.n()),
                wall_ms,
            });
        }
    }
    Ok(summarize(rows, seeds.len()))
}

fn summarize(rows: Vec<ScalingRow>, per_size: usize) -> ScalingTable {
    let groups: Vec<&[ScalingRow]> = rows.chunks(per_size).collect();
    let mean = |g: &[ScalingRow], f: fn(&ScalingRow) -> f64| g.iter().map(f).sum::<f64>() / g.len() as f64;
    let spread = |f: fn(&ScalingRow) -> f64| {
        let v: Vec<f64> = groups.iter().map(|g| mean(g, f)).collect();
        let hi = v.iter().copied().fold(f64::MIN, f64::max);
        let lo = v.iter().copied().fold(f64::MAX, f64::min);
        if lo > 0.0 { hi / lo } else { f64::INFINITY }
    };
    let slope = |x: fn(&ScalingRow) -> f64, y: fn(&ScalingRow) -> f64| {
        if groups.len() < 2 {
            return None;
        }
        let pts: Vec<(f64, f64)> = groups.iter().map(|g| (mean(g, x).ln(), mean(g, y).ln())).collect();
        let k = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
        let (mx, my) = (sx / k, sy / k);
        let cov: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let var: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        (var > 0.0).then(|| cov / var)
    };
    let work_spread = spread(|r| r.work_ratio);
    let rounds_spread = spread(|r| r.rounds_ratio);
    let work_slope = slope(|r| work_bound(r.m), |r| r.work_units as f64);
    let rounds_slope = slope(|r| rounds_bound(r.n), |r| r.rounds as f64);
    ScalingTable { rows, work_spread, rounds_spread, work_slope, rounds_slope }
}

impl ScalingTable {
    /// Plain-text table, one row per run.
    pub fn render(&self) -> String {
        let mut s = String::from("       n         m  seed        work_units       rounds  work/mlog3m  rounds/sqrt(n)log3n\n");
        for r in &self.rows {
            s += &format!(
                "{:>8} {:>9} {:>5} {:>17} {:>12} {:>12.4} {:>20.4}\n",
                r.n, r.m, r.seed, r.work_units, r.rounds, r.work_ratio, r.rounds_ratio
            );
        }
        s += &format!("work spread {:.3}, rounds spread {:.3}", self.work_spread, self.rounds_spread);
        if let (Some(w), Some(d)) = (self.work_slope, self.rounds_slope) {
            s += &format!(", slopes {w:.3} / {d:.3}");
        }
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correction_factor() {
        assert!((polylog_correction(1 << 10, 1 << 20) - 8.0).abs() < 1e-9);
    }

    #[test]
    fn single_size_is_trivial() {
        let t = scaling_suite(&[300], &[1], GenKind::RandomGnmConnected, 3, 32, &pardfs_core::Sequential).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.work_spread, 1.0);
        assert_eq!(t.work_slope, None);
    }

    #[test]
    fn unsorted_sizes_are_rejected() {
        assert!(scaling_suite(&[400, 300], &[1], GenKind::Path, 1, 32, &pardfs_core::Sequential).is_err());
    }
}
