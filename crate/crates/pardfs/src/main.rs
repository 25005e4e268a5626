use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pardfs::io::{format_dot, format_graph, format_parent_array, read_graph, separator_json};
use pardfs::run::{GraphInfo, RunConfig};
use pardfs::scaling::scaling_suite;
use pardfs::{generate, run_and_report, GenKind, GenParams, Mode, RayonExecutor, VerifyLevel};
use pardfs_core::separator::{find_separator, is_separator};
use pardfs_core::{Graph, WorkDepthMeter};

#[derive(Parser)]
#[command(name = "pardfs", version, about = "Parallel depth-first search for undirected graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute and verify a DFS tree, printing a JSON report.
    Dfs(DfsArgs),
    /// Write a generated graph in the edge-list format.
    Gen(GenArgs),
    /// Compute a path separator and print it as JSON.
    Separator(SepArgs),
    /// Measure work and rounds across sizes.
    Scale(ScaleArgs),
}

#[derive(Args)]
struct Source {
    /// Generator: path, cycle, grid, random-gnm-connected, random-tree, star, complete, lollipop.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    gen: Option<GenKind>,
    /// Edge-list file (`n m` header, 1-based endpoints).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Extra generator parameters, e.g. `w=30,h=40` or `clique=10`.
    #[arg(long)]
    params: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Source {
    fn load(&self) -> Result<(Graph, GraphInfo)> {
        if let Some(path) = &self.input {
            let g = read_graph(path)?;
            let info = GraphInfo {
                n: g.n(),
                m: g.m(),
                source: path.display().to_string(),
                generator: None,
                params: Default::default(),
                seed: self.seed,
            };
            return Ok((g, info));
        }
        let kind = self.gen.context("one of --gen or --input is required")?;
        let mut p = GenParams { n: self.n, m: self.m, ..Default::default() };
        if let Some(s) = &self.params {
            p.parse_extra(s)?;
        }
        let g = generate(kind, &p, self.seed)?;
        let mut params = p.extra.clone();
        params.extend(p.n.map(|n| ("n".to_string(), n)));
        params.extend(p.m.map(|m| ("m".to_string(), m)));
        let info = GraphInfo { n: g.n(), m: g.m(), source: "generated".into(), generator: Some(kind.to_string()), params, seed: self.seed };
        Ok((g, info))
    }
}

#[derive(Args)]
struct DfsArgs {
    #[command(flatten)]
    src: Source,
    /// 1-based root vertex.
    #[arg(long, default_value_t = 1)]
    root: usize,
    #[arg(long, default_value = "parallel")]
    mode: Mode,
    #[arg(long, default_value_t = 256)]
    cutoff: usize,
    /// `full` also checks the growing segment after every absorb step.
    #[arg(long, default_value = "fast")]
    verify: VerifyLevel,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    export_dot: Option<PathBuf>,
    /// Write the parent array (`v p` per line, 0 for roots).
    #[arg(long)]
    export_parent: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SepArgs {
    #[command(flatten)]
    src: Source,
}

#[derive(Args)]
struct ScaleArgs {
    /// Comma-separated ascending sizes.
    #[arg(long, value_delimiter = ',', default_values_t = [4096usize, 16384, 65536])]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [0u64])]
    seeds: Vec<u64>,
    #[arg(long, default_value = "random-gnm-connected")]
    gen: GenKind,
    #[arg(long, default_value_t = 5)]
    m_factor: usize,
    #[arg(long, default_value_t = 256)]
    cutoff: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    json: bool,
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dfs(a: DfsArgs) -> Result<bool> {
    let (g, info) = a.src.load()?;
    let exec = RayonExecutor::new(a.workers)?;
    let config = RunConfig { mode: a.mode, root: a.root, cutoff: a.cutoff, verify: a.verify, workers: exec.workers() };
    let (report, run) = run_and_report(&g, info, config, a.src.seed, &exec)?;
    write_out(a.report.as_ref(), &report.to_json())?;
    if let Some(run) = &run {
        if let Some(p) = &a.export_dot {
            fs::write(p, format_dot(&g, &run.parent)).with_context(|| format!("writing {}", p.display()))?;
        }
        if let Some(p) = &a.export_parent {
            fs::write(p, format_parent_array(&run.parent)).with_context(|| format!("writing {}", p.display()))?;
        }
    }
    if let Some(d) = &report.verifier.diagnostic {
        eprintln!("pardfs: verification failed: {d}");
    }
    Ok(report.verified)
}

fn separator(a: SepArgs) -> Result<bool> {
    let (g, _) = a.src.load()?;
    if g.n() == 0 {
        bail!("empty graph");
    }
    let mut meter = WorkDepthMeter::new();
    let sep = find_separator(&g, a.src.seed, &mut meter)?;
    let ok = is_separator(&g, &sep.paths, &mut meter)?;
    let out = serde_json::json!({
        "n": g.n(),
        "m": g.m(),
        "separates": ok,
        "path_counts": sep.counts,
        "paths": separator_json(&sep.paths),
        "work_units": meter.work_units(),
        "rounds": meter.rounds(),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ok)
}

fn scale(a: ScaleArgs) -> Result<bool> {
    let exec = RayonExecutor::new(a.workers)?;
    let t = scaling_suite(&a.sizes, &a.seeds, a.gen, a.m_factor, a.cutoff, &exec)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&t)?);
    } else {
        print!("{}", t.render());
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Dfs(a) => dfs(a),
        Cmd::Gen(a) => a.src.load().and_then(|(g, _)| write_out(a.output.as_ref(), &format_graph(&g)).map(|()| true)),
        Cmd::Separator(a) => separator(a),
        Cmd::Scale(a) => scale(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pardfs: {e:#}");
            ExitCode::from(2)
        }
    }
}
