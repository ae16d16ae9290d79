//! The Pledge rule on hex cells.
//!
//! While the running turn sum `theta` is zero the walker prefers to keep
//! its heading (`F > LF > LR > R > RR > RF`); otherwise it follows the wall
//! with the right-hand order `RF > F > LF > LR > R > RR`. `theta` counts
//! signed clockwise turns in sixths of a full turn. The clockwise variant is
//! the exact mirror image: both priority lists swap left and right and turns
//! are counted counterclockwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{AbsDir, HexCoord, Terrain};
use crate::wallrules::RelAction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Counterclockwise,
    Clockwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PledgeState {
    pub theta: i32,
    /// Direction of the previous move.
    pub heading: AbsDir,
    pub chirality: Chirality,
}

impl PledgeState {
    pub fn new(chirality: Chirality, heading: AbsDir) -> Self {
        Self {
            theta: 0,
            heading,
            chirality,
        }
    }
}

const THETA_ZERO_ORDER: [RelAction; 6] = {
    use RelAction::*;
    [F, LF, LR, R, RR, RF]
};

const WALL_ORDER: [RelAction; 6] = {
    use RelAction::*;
    [RF, F, LF, LR, R, RR]
};

/// Signed turn for a relative action in the counterclockwise frame. Both
/// scans sweep the left side before reaching the rear move, so a reversal
/// is a half turn to the left: `-3`.
fn turn_of(rel: RelAction) -> i32 {
    match rel {
        RelAction::F => 0,
        RelAction::RF => 1,
        RelAction::RR => 2,
        RelAction::R => -3,
        RelAction::LR => -2,
        RelAction::LF => -1,
    }
}

/// Choose the next move and update the turn counter.
pub fn pledge_action(
    terrain: &impl Terrain,
    pos: HexCoord,
    st: PledgeState,
) -> Result<(AbsDir, PledgeState)> {
    let order = if st.theta == 0 { &THETA_ZERO_ORDER } else { &WALL_ORDER };
    for &rel in order {
        let actual = match st.chirality {
            Chirality::Counterclockwise => rel,
            Chirality::Clockwise => rel.mirrored(),
        };
        let dir = super::relative_to_absolute(st.heading, actual);
        if terrain.passable(pos.neighbor(dir)) {
            let next = PledgeState {
                theta: st.theta + turn_of(rel),
                heading: dir,
                chirality: st.chirality,
            };
            return Ok((dir, next));
        }
    }
    Err(Error::Enclosed(pos))
}

/// Outcome of walking with the Pledge rule.
#[derive(Debug, Clone)]
pub struct PledgeWalk {
    pub states: Vec<HexCoord>,
    pub reached: bool,
}

/// Walk from `start` with the Pledge rule until `goal` or `max_steps` moves.
pub fn pledge_navigate(
    terrain: &impl Terrain,
    start: HexCoord,
    goal: HexCoord,
    chirality: Chirality,
    heading: AbsDir,
    max_steps: usize,
) -> Result<PledgeWalk> {
    let mut st = PledgeState::new(chirality, heading);
    let mut pos = start;
    let mut states = vec![start];
    while pos != goal && states.len() <= max_steps {
        let (dir, next) = pledge_action(terrain, pos, st)?;
        st = next;
        pos = pos.neighbor(dir);
        states.push(pos);
    }
    Ok(PledgeWalk {
        reached: pos == goal,
        states,
    })
}
