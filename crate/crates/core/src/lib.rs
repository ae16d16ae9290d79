//! Hex-grid robot navigation laboratory.
//!
//! The crate bundles the pieces of a rule-assisted tabular RL pipeline for
//! doubled-coordinate hex maps:
//!
//! * [`hexgrid`]: coordinates, distances, rings, map files.
//! * [`wallrules`]: left/right-hand wall following, K-step trajectory
//!   reduction, closed-loop region extraction and the Pledge rule.
//! * [`navenv`]: the navigation MDP with bounce-on-collision.
//! * [`learners`]: Q-learning / SARSA, exploration strategies and the
//!   integrated rule-based training loop.
//! * [`planners`]: BFS, A* and ant-colony baselines.
//! * [`harness`]: configs, seeded multi-run experiments, metrics, theorem
//!   checks and plots.

pub mod error;
pub mod harness;
pub mod hexgrid;
pub mod learners;
pub mod navenv;
pub mod planners;
pub mod wallrules;

pub use error::{Error, Result};
pub use hexgrid::{AbsDir, CellKind, HexCoord, HexMap, Terrain};
