use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{AbsDir, HexCoord, Terrain};

/// An ordered walk over hex cells with the move taken between each pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub states: Vec<HexCoord>,
    pub actions: Vec<AbsDir>,
}

impl Trajectory {
    /// Build from states, deriving the actions. Fails if two consecutive
    /// states are not adjacent.
    pub fn from_states(states: Vec<HexCoord>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Contract("trajectory needs at least one state".into()));
        }
        let actions = states
            .windows(2)
            .map(|w| {
                w[0].direction_to(w[1]).ok_or_else(|| {
                    Error::Contract(format!("{} and {} are not adjacent", w[0], w[1]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { states, actions })
    }

    /// Number of moves.
    pub fn steps(&self) -> usize {
        self.actions.len()
    }

    pub fn first(&self) -> HexCoord {
        self.states[0]
    }

    pub fn last(&self) -> HexCoord {
        *self.states.last().expect("trajectory is never empty")
    }

    /// Check adjacency, passability and the goal endpoint.
    pub fn validate(&self, terrain: &impl Terrain, goal: HexCoord) -> Result<()> {
        if self.actions.len() + 1 != self.states.len() {
            return Err(Error::Contract("actions must be one shorter than states".into()));
        }
        for (w, &a) in self.states.windows(2).zip(&self.actions) {
            if w[0].neighbor(a) != w[1] {
                return Err(Error::Contract(format!(
                    "action {a:?} does not lead from {} to {}",
                    w[0], w[1]
                )));
            }
        }
        if let Some(c) = self.states.iter().find(|&&c| !terrain.passable(c)) {
            return Err(Error::Contract(format!("state {c} is not free")));
        }
        if self.last() != goal {
            return Err(Error::Contract(format!("trajectory ends at {}, not {goal}", self.last())));
        }
        Ok(())
    }

    /// One JSON line: `{"states": [[i,j],...], "actions": [d,...]}`.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("trajectory serializes")
    }
}
