use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hexnav::harness::{
    check_theorems, load_map_file, preset_map, run_bench, run_train, ExperimentConfig,
    ExperimentReport, PathMetrics, Preset,
};
use hexnav::hexgrid::{rasterize_dims, render_ascii};
use hexnav::planners::{aco, astar, bfs_shortest, AcoParams};
use hexnav::wallrules::{wall_follow, Hand, ReducedSpace};
use hexnav::{Error, Result};

#[derive(Parser)]
#[command(name = "hexnav", version, about = "Hex-grid navigation laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Grid size (rows, columns) covering a rectangle.
    Rasterize {
        /// Extent along the column axis, in cm.
        #[arg(long)]
        length: f64,
        /// Extent along the row axis, in cm.
        #[arg(long)]
        width: f64,
        /// Hexagon edge length, in cm.
        #[arg(long)]
        edge: f64,
    },
    /// Wall-following trajectory as a JSON line.
    TraceWall {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_parser = parse_hand)]
        hand: Hand,
    },
    /// Reduced left and right trajectories as JSON lines.
    Reduce {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Closed-loop region overlaid on the map ('*' marks region cells).
    Region {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Plan a path with a classical planner.
    Plan {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum)]
        algo: PlanAlgo,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the configured method.
    Train {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the configured methods side by side with shared seeds.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
    /// Check that the reduced region keeps an optimal path.
    CheckTheorems {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Print a bundled synthetic map.
    GenMap {
        #[arg(long, value_parser = parse_preset)]
        preset: Preset,
        /// Defaults to the seed of the bundled file.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PlanAlgo {
    Astar,
    Aco,
    Bfs,
}

fn parse_hand(s: &str) -> std::result::Result<Hand, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_preset(s: &str) -> std::result::Result<Preset, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::Rasterize {
            length,
            width,
            edge,
        } => {
            let (n, m) = rasterize_dims(width, length, edge)?;
            println!("{n} {m}");
        }
        Cmd::TraceWall { map, hand } => {
            let map = load_map_file(&map)?;
            println!("{}", wall_follow(&map, hand, None)?.to_json_line());
        }
        Cmd::Reduce { map, k } => {
            let map = load_map_file(&map)?;
            let space = ReducedSpace::build(&map, k)?;
            println!("{}", space.left_reduced.to_json_line());
            println!("{}", space.right_reduced.to_json_line());
        }
        Cmd::Region { map, k } => {
            let map = load_map_file(&map)?;
            let space = ReducedSpace::build(&map, k)?;
            print!("{}", space.region.overlay(&map));
        }
        Cmd::Plan { map, algo, seed } => {
            let map = load_map_file(&map)?;
            let unsolvable = || Error::Unsolvable {
                start: map.start(),
                goal: map.goal(),
            };
            let path = match algo {
                PlanAlgo::Bfs => bfs_shortest(&map, None).ok_or_else(unsolvable)?,
                PlanAlgo::Astar => astar(&map, map.edge_cm.unwrap_or(1.0)).ok_or_else(unsolvable)?,
                PlanAlgo::Aco => aco(&map, &AcoParams { seed, ..AcoParams::default() })?,
            };
            let m = PathMetrics::of(&path);
            let out = json!({
                "states": path.states,
                "length": m.length,
                "direction_switches": m.direction_switches,
            });
            println!("{out}");
        }
        Cmd::Train { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            print_report(&run_train(&cfg)?, &cfg);
        }
        Cmd::Bench { config } => {
            let cfg = ExperimentConfig::load(&config)?;
            print_report(&run_bench(&cfg)?, &cfg);
        }
        Cmd::CheckTheorems { map, k } => {
            let map = load_map_file(&map)?;
            let report = check_theorems(&map, k)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            if !report.passed() {
                eprint!("{}", report.counterexample(&map));
                return Err(Error::Contract(format!("reduction guarantees failed for K = {k}")));
            }
        }
        Cmd::GenMap { preset, seed } => {
            let map = preset_map(preset, seed.unwrap_or(preset.default_seed()))?;
            print!("{}", render_ascii(&map));
        }
    }
    Ok(())
}

fn print_report(report: &ExperimentReport, cfg: &ExperimentConfig) {
    println!(
        "map {}: shortest path {}, {} runs, root seed {}",
        report.map, report.shortest_path, report.runs, report.root_seed
    );
    for m in &report.methods {
        let conv = m.runs.iter().filter(|r| r.converged).count();
        let mean_len =
            m.runs.iter().map(|r| r.metrics.length).sum::<usize>() as f64 / m.runs.len() as f64;
        let mean_sw = m.runs.iter().map(|r| r.metrics.direction_switches).sum::<usize>() as f64
            / m.runs.len() as f64;
        match m.mean_total_steps {
            Some(t) => println!(
                "  {:<9} mean total steps {t:.0}, final path {mean_len:.1} hops, {mean_sw:.1} switches, {conv}/{} reach the goal",
                m.method,
                m.runs.len()
            ),
            None => println!(
                "  {:<9} path {mean_len:.1} hops, {mean_sw:.1} switches",
                m.method
            ),
        }
    }
    for r in &report.reductions {
        println!("  {} vs {}: {:.2}% fewer learning steps", r.method, r.baseline, r.percent);
    }
    println!("outputs in {}", cfg.output_dir().display());
}
