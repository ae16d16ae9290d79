//! Shortest-path baselines: BFS (the oracle), A* and an ant colony.

mod aco;
mod astar;
mod bfs;

pub use aco::{aco, AcoParams};
pub use astar::{astar, astar_with_stats};
pub use bfs::{bfs_path, bfs_shortest, bfs_with_stats, SearchStats};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hexgrid::{AbsDir, HexCoord, Terrain};
use crate::wallrules::Trajectory;

/// Start-to-goal sequence of adjacent cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Path {
    pub states: Vec<HexCoord>,
}

impl Path {
    /// Number of moves.
    pub fn len(&self) -> usize {
        self.states.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn actions(&self) -> Vec<AbsDir> {
        self.states
            .windows(2)
            .map(|w| w[0].direction_to(w[1]).expect("path cells are adjacent"))
            .collect()
    }

    pub fn to_trajectory(&self) -> Trajectory {
        Trajectory {
            states: self.states.clone(),
            actions: self.actions(),
        }
    }

    /// Check adjacency, passability and endpoints.
    pub fn validate(&self, terrain: &impl Terrain, start: HexCoord, goal: HexCoord) -> Result<()> {
        if self.states.first() != Some(&start) {
            return Err(Error::Contract(format!("path does not begin at {start}")));
        }
        if self.states.windows(2).any(|w| w[0].direction_to(w[1]).is_none()) {
            return Err(Error::Contract("path has non-adjacent consecutive cells".into()));
        }
        Trajectory::from_states(self.states.clone())?.validate(terrain, goal)
    }
}
