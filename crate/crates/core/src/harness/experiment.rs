//! Seeded multi-run experiments and their on-disk outputs.
//!
//! Output layout under the output directory:
//!
//! ```text
//! summary.json
//! curves.svg                  (when a learning method ran)
//! <method>/run_000.csv        episode,steps,pledge_used
//! <method>/curve.csv          episode,mean_steps
//! ```
//!
//! Run `r` of every method uses `seed_for_run(seed, r)`, so paired methods
//! see identical seeds.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::config::{ExperimentConfig, Method};
use crate::harness::metrics::PathMetrics;
use crate::harness::svg::{emit_svg, Curve};
use crate::hexgrid::{load_map, HexCoord, HexMap};
use crate::learners::{seed_for_run, train};
use crate::planners::{aco, astar, bfs_shortest, AcoParams, Path as HexPath};

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub run: usize,
    pub seed: u64,
    /// Learning steps over all episodes; `None` for planners.
    pub total_steps: Option<u64>,
    /// The final path reached the goal.
    pub converged: bool,
    pub metrics: PathMetrics,
    pub path: Vec<HexCoord>,
    #[serde(skip)]
    pub steps_per_episode: Vec<usize>,
    #[serde(skip)]
    pub pledge_used: Vec<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MethodReport {
    pub method: String,
    pub mean_total_steps: Option<f64>,
    /// Mean steps per episode over all runs; empty for planners.
    #[serde(skip)]
    pub mean_curve: Vec<f64>,
    pub runs: Vec<RunReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reduction {
    pub method: String,
    pub baseline: String,
    /// `100 * (baseline - method) / baseline` on mean total steps.
    pub percent: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub map: String,
    pub shortest_path: usize,
    pub root_seed: u64,
    pub runs: usize,
    pub methods: Vec<MethodReport>,
    pub reductions: Vec<Reduction>,
}

impl ExperimentReport {
    pub fn method(&self, m: Method) -> Option<&MethodReport> {
        self.methods.iter().find(|r| r.method == m.name())
    }

    pub fn reduction(&self, m: Method) -> Option<f64> {
        self.reductions
            .iter()
            .find(|r| r.method == m.name())
            .map(|r| r.percent)
    }
}

pub fn load_map_file(path: &Path) -> Result<HexMap> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("map {}: {e}", path.display())))?;
    load_map(&text)
}

/// Run `cfg.method` and write its outputs.
pub fn run_train(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    run_and_write(cfg, &[cfg.method])
}

/// Run every `cfg.bench_methods` entry with shared seeds and write outputs.
pub fn run_bench(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    run_and_write(cfg, &cfg.bench_methods)
}

fn run_and_write(cfg: &ExperimentConfig, methods: &[Method]) -> Result<ExperimentReport> {
    let map = load_map_file(&cfg.map)?;
    let report = run_experiment(&map, cfg, methods)?;
    write_outputs(&report, &cfg.output_dir())?;
    Ok(report)
}

/// Run `methods` on `map` without touching the filesystem.
pub fn run_experiment(
    map: &HexMap,
    cfg: &ExperimentConfig,
    methods: &[Method],
) -> Result<ExperimentReport> {
    cfg.validate()?;
    let shortest = bfs_shortest(map, None).ok_or(Error::Unsolvable {
        start: map.start(),
        goal: map.goal(),
    })?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;

    let mut reports = Vec::with_capacity(methods.len());
    for &method in methods {
        let runs: Vec<Result<RunReport>> = pool.install(|| {
            (0..cfg.runs)
                .into_par_iter()
                .map(|run| {
                    let seed = seed_for_run(cfg.seed, run);
                    one_run(map, cfg, method, run, seed).map_err(|e| Error::RunFailed {
                        run,
                        seed,
                        source: Box::new(e),
                    })
                })
                .collect()
        });
        let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
        reports.push(summarize(method, runs));
    }

    let reductions = match reports.iter().find(|r| r.method == Method::RlPlain.name()) {
        Some(base) => {
            let b = base.mean_total_steps.unwrap_or(0.0);
            reports
                .iter()
                .filter(|r| r.method != base.method)
                .filter_map(|r| {
                    r.mean_total_steps.map(|m| Reduction {
                        method: r.method.clone(),
                        baseline: base.method.clone(),
                        percent: 100.0 * (b - m) / b,
                    })
                })
                .collect()
        }
        None => Vec::new(),
    };

    Ok(ExperimentReport {
        map: map.name.clone().unwrap_or_else(|| cfg.map.display().to_string()),
        shortest_path: shortest.len(),
        root_seed: cfg.seed,
        runs: cfg.runs,
        methods: reports,
        reductions,
    })
}

fn one_run(
    map: &HexMap,
    cfg: &ExperimentConfig,
    method: Method,
    run: usize,
    seed: u64,
) -> Result<RunReport> {
    let planned = |path: HexPath| RunReport {
        run,
        seed,
        total_steps: None,
        converged: true,
        metrics: PathMetrics::of(&path),
        path: path.states,
        steps_per_episode: Vec::new(),
        pledge_used: Vec::new(),
    };
    match method {
        Method::Astar => {
            let path = astar(map, map.edge_cm.unwrap_or(1.0)).ok_or(Error::Unsolvable {
                start: map.start(),
                goal: map.goal(),
            })?;
            Ok(planned(path))
        }
        Method::Aco => {
            let params = AcoParams { seed, ..cfg.aco };
            Ok(planned(aco(map, &params)?))
        }
        Method::Rurl | Method::RlPlain | Method::RlCount | Method::RlUcb => {
            let rules = method == Method::Rurl;
            let r = train(map, &cfg.rurl_config(method, seed), rules, rules)?;
            Ok(RunReport {
                run,
                seed,
                total_steps: Some(r.total_steps),
                converged: r.converged,
                metrics: PathMetrics::of_actions(&r.greedy_path.actions),
                path: r.greedy_path.states,
                steps_per_episode: r.steps_per_episode,
                pledge_used: r.pledge_used,
            })
        }
    }
}

fn summarize(method: Method, runs: Vec<RunReport>) -> MethodReport {
    let n = runs.len() as f64;
    let (mean_total_steps, mean_curve) = if method.is_learner() {
        let total: f64 = runs.iter().filter_map(|r| r.total_steps).map(|t| t as f64).sum();
        let len = runs.iter().map(|r| r.steps_per_episode.len()).max().unwrap_or(0);
        let mut curve = vec![0.0; len];
        for r in &runs {
            for (c, &s) in curve.iter_mut().zip(&r.steps_per_episode) {
                *c += s as f64;
            }
        }
        curve.iter_mut().for_each(|c| *c /= n);
        (Some(total / n), curve)
    } else {
        (None, Vec::new())
    };
    MethodReport {
        method: method.name().to_string(),
        mean_total_steps,
        mean_curve,
        runs,
    }
}

/// Write per-run CSVs, mean curves, `summary.json` and `curves.svg`.
pub fn write_outputs(report: &ExperimentReport, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut curves = Vec::new();
    for m in &report.methods {
        let mdir = dir.join(&m.method);
        fs::create_dir_all(&mdir)?;
        if m.mean_curve.is_empty() {
            continue;
        }
        for r in &m.runs {
            let mut w = csv::Writer::from_path(mdir.join(format!("run_{:03}.csv", r.run)))?;
            w.write_record(["episode", "steps", "pledge_used"])?;
            for (e, (&s, &p)) in r.steps_per_episode.iter().zip(&r.pledge_used).enumerate() {
                w.write_record([e.to_string(), s.to_string(), u8::from(p).to_string()])?;
            }
            w.flush()?;
        }
        let mut w = csv::Writer::from_path(mdir.join("curve.csv"))?;
        w.write_record(["episode", "mean_steps"])?;
        for (e, v) in m.mean_curve.iter().enumerate() {
            w.write_record([e.to_string(), v.to_string()])?;
        }
        w.flush()?;
        curves.push(Curve {
            label: m.method.clone(),
            values: m.mean_curve.clone(),
        });
    }
    let json = serde_json::to_string_pretty(report)?;
    fs::write(dir.join("summary.json"), json + "\n")?;
    if !curves.is_empty() {
        fs::write(dir.join("curves.svg"), emit_svg(&curves)?)?;
    }
    Ok(())
}
