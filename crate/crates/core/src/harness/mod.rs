//! Experiment orchestration: configs, seeded multi-run execution, metrics,
//! theorem checks, map generation and plots.

pub mod config;
pub mod experiment;
pub mod mapgen;
pub mod metrics;
pub mod svg;
pub mod theorems;

pub use config::{ExperimentConfig, ExploreKind, Method, OUT_ENV};
pub use experiment::{
    load_map_file, run_bench, run_experiment, run_train, write_outputs, ExperimentReport,
    MethodReport, Reduction, RunReport,
};
pub use mapgen::{campaign_map, preset_map, random_map, Preset};
pub use metrics::{direction_switches, PathMetrics};
pub use svg::{emit_svg, Curve};
pub use theorems::{check_theorems, TheoremReport};
