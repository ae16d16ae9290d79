//! Left/right-hand wall following.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hexgrid::{AbsDir, HexCoord, HexMap, Terrain};
use crate::wallrules::Trajectory;

/// Egocentric action, relative to the current heading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelAction {
    F,
    RF,
    RR,
    R,
    LR,
    LF,
}

impl RelAction {
    /// Clockwise offset in sixths of a turn.
    pub const fn offset(self) -> u8 {
        match self {
            RelAction::F => 0,
            RelAction::RF => 1,
            RelAction::RR => 2,
            RelAction::R => 3,
            RelAction::LR => 4,
            RelAction::LF => 5,
        }
    }

    pub const fn from_offset(offset: u8) -> Self {
        match offset % 6 {
            0 => RelAction::F,
            1 => RelAction::RF,
            2 => RelAction::RR,
            3 => RelAction::R,
            4 => RelAction::LR,
            _ => RelAction::LF,
        }
    }

    /// Left/right reflection.
    pub const fn mirrored(self) -> Self {
        Self::from_offset((6 - self.offset()) % 6)
    }
}

pub fn relative_to_absolute(heading: AbsDir, rel: RelAction) -> AbsDir {
    heading.rotate(i32::from(rel.offset()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    Left,
    Right,
}

impl Hand {
    pub const fn priority(self) -> [RelAction; 6] {
        use RelAction::*;
        match self {
            Hand::Right => [RF, F, LF, LR, R, RR],
            Hand::Left => [LF, F, RF, RR, R, LR],
        }
    }

    /// The rear cell on this hand's side; kept against the wall while tracing.
    const fn rear_side(self) -> RelAction {
        match self {
            Hand::Right => RelAction::RR,
            Hand::Left => RelAction::LR,
        }
    }
}

impl std::str::FromStr for Hand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Hand::Left),
            "right" => Ok(Hand::Right),
            other => Err(Error::Config(format!("hand must be left or right, got '{other}'"))),
        }
    }
}

/// Default step cap: 20 moves per map cell.
pub fn default_step_cap(map: &HexMap) -> usize {
    20 * map.n_cells()
}

/// Trace from the map's start to its goal with the given hand, starting
/// with the default heading (north).
pub fn wall_follow(map: &HexMap, hand: Hand, step_cap: Option<usize>) -> Result<Trajectory> {
    let cap = step_cap.unwrap_or_else(|| default_step_cap(map));
    wall_follow_from(map, map.start(), map.goal(), hand, AbsDir::N, cap)
}

/// Wall following on arbitrary terrain.
///
/// The robot needs a wall on its hand side before the first move, otherwise
/// the hand-first priority spins it around a free cell forever. The blocked
/// neighbours of the start are scanned clockwise from `heading`; for each
/// one the robot turns so that cell sits at its hand-side rear, and traces
/// until the goal is reached or a `(cell, heading)` pair repeats. A repeat
/// means the wall is an island that does not touch the goal, so the next
/// blocked neighbour is tried. Both hands scan in the same order and so
/// follow the same wall in opposite senses.
pub fn wall_follow_from(
    terrain: &impl Terrain,
    start: HexCoord,
    goal: HexCoord,
    hand: Hand,
    heading: AbsDir,
    step_cap: usize,
) -> Result<Trajectory> {
    if start == goal {
        return Err(Error::Contract("start and goal coincide".into()));
    }
    if !start.neighbors().iter().any(|&(_, n)| terrain.passable(n)) {
        return Err(Error::StartEnclosed(start));
    }
    let back = -i32::from(hand.rear_side().offset());
    let anchors: Vec<AbsDir> = (0..6)
        .map(|k| heading.rotate(k))
        .filter(|&w| !terrain.passable(start.neighbor(w)))
        .map(|w| w.rotate(back))
        .collect();
    let anchors = if anchors.is_empty() { vec![heading] } else { anchors };

    let mut last_err = None;
    for h in anchors {
        match trace(terrain, start, goal, hand, h, step_cap) {
            Ok(t) => return Ok(t),
            Err(e @ Error::WallFollowUnreachable(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.expect("at least one anchor is tried"))
}

fn trace(
    terrain: &impl Terrain,
    start: HexCoord,
    goal: HexCoord,
    hand: Hand,
    mut heading: AbsDir,
    step_cap: usize,
) -> Result<Trajectory> {
    let mut states = vec![start];
    let mut actions = Vec::new();
    let mut seen = HashSet::new();
    let mut pos = start;
    while pos != goal {
        if actions.len() >= step_cap {
            return Err(Error::WallFollowUnreachable(format!(
                "step cap {step_cap} exceeded"
            )));
        }
        if !seen.insert((pos, heading)) {
            return Err(Error::WallFollowUnreachable(format!(
                "tour from {start} closed at {pos} without meeting {goal}"
            )));
        }
        let dir = hand
            .priority()
            .iter()
            .map(|&rel| relative_to_absolute(heading, rel))
            .find(|&d| terrain.passable(pos.neighbor(d)))
            .ok_or(Error::Enclosed(pos))?;
        pos = pos.neighbor(dir);
        heading = dir;
        states.push(pos);
        actions.push(dir);
    }
    Ok(Trajectory { states, actions })
}
