//! The navigation MDP on a hex map.
//!
//! Moves into obstacles, unknown cells, off the map or out of the allowed
//! region bounce the robot back with a `-100` reward; the episode goes on.
//! Reaching the goal pays `+100` and ends the episode, every other move
//! costs `-1`.

use crate::error::{Error, Result};
use crate::hexgrid::{AbsDir, HexCoord, HexMap, Terrain};
use crate::wallrules::RegionMask;

pub const GOAL_REWARD: f64 = 100.0;
pub const COLLISION_REWARD: f64 = -100.0;
pub const STEP_REWARD: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DoneCause {
    Goal,
    StepLimit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub state: HexCoord,
    pub action: AbsDir,
    pub reward: f64,
    pub next_state: HexCoord,
    pub done: Option<DoneCause>,
}

impl Transition {
    pub fn bounced(&self) -> bool {
        self.reward == COLLISION_REWARD
    }
}

#[derive(Debug, Clone)]
pub struct NavEnv<'a> {
    map: &'a HexMap,
    allowed: Option<&'a RegionMask>,
    pos: HexCoord,
    steps_in_episode: usize,
    max_steps: usize,
    done: Option<DoneCause>,
}

impl<'a> NavEnv<'a> {
    pub fn new(map: &'a HexMap, max_steps: usize) -> Result<Self> {
        if max_steps == 0 {
            return Err(Error::Contract("max_steps must be positive".into()));
        }
        Ok(Self {
            map,
            allowed: None,
            pos: map.start(),
            steps_in_episode: 0,
            max_steps,
            done: None,
        })
    }

    /// Environment in which cells outside `region` act as obstacles.
    pub fn restrict(map: &'a HexMap, region: &'a RegionMask, max_steps: usize) -> Result<Self> {
        for (what, c) in [("start", map.start()), ("goal", map.goal())] {
            if !region.contains(c) {
                return Err(Error::Contract(format!("region does not contain the {what} {c}")));
            }
        }
        let mut env = Self::new(map, max_steps)?;
        env.allowed = Some(region);
        Ok(env)
    }

    pub fn map(&self) -> &'a HexMap {
        self.map
    }

    pub fn pos(&self) -> HexCoord {
        self.pos
    }

    pub fn steps_in_episode(&self) -> usize {
        self.steps_in_episode
    }

    pub fn max_steps(&self) -> usize {
        self.max_steps
    }

    pub fn done(&self) -> Option<DoneCause> {
        self.done
    }

    pub fn reset(&mut self) -> HexCoord {
        self.pos = self.map.start();
        self.steps_in_episode = 0;
        self.done = None;
        self.pos
    }

    pub fn step(&mut self, action: AbsDir) -> Result<Transition> {
        if let Some(cause) = self.done {
            return Err(Error::Contract(format!("step called on a finished episode ({cause:?})")));
        }
        let state = self.pos;
        let target = state.neighbor(action);
        let (next_state, reward) = if !self.passable(target) {
            (state, COLLISION_REWARD)
        } else if target == self.map.goal() {
            (target, GOAL_REWARD)
        } else {
            (target, STEP_REWARD)
        };
        self.pos = next_state;
        self.steps_in_episode += 1;
        self.done = if next_state == self.map.goal() {
            Some(DoneCause::Goal)
        } else if self.steps_in_episode >= self.max_steps {
            Some(DoneCause::StepLimit)
        } else {
            None
        };
        Ok(Transition {
            state,
            action,
            reward,
            next_state,
            done: self.done,
        })
    }
}

impl Terrain for NavEnv<'_> {
    #[inline]
    fn passable(&self, c: HexCoord) -> bool {
        self.map.is_free(c) && self.allowed.is_none_or(|r| r.contains(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::load_map;

    #[test]
    fn rewards_and_bounce() {
        let map = load_map("B.\n#G\n").unwrap();
        // start (0,0), goal (3,1), obstacle (2,0), free (1,1)
        let mut env = NavEnv::new(&map, 100).unwrap();
        assert_eq!(env.reset(), map.start());
        let t = env.step(AbsDir::S).unwrap();
        assert_eq!((t.next_state, t.reward, t.done), (map.start(), -100.0, None));
        let t = env.step(AbsDir::N).unwrap();
        assert!(t.bounced());
        let t = env.step(AbsDir::SE).unwrap();
        assert_eq!((t.next_state, t.reward), (HexCoord::new(1, 1), -1.0));
        let t = env.step(AbsDir::S).unwrap();
        assert_eq!((t.reward, t.done), (100.0, Some(DoneCause::Goal)));
        assert!(env.step(AbsDir::N).is_err());
        assert_eq!(env.reset(), map.start());
    }

    #[test]
    fn step_limit() {
        let map = load_map("B.\n#G\n").unwrap();
        let mut env = NavEnv::new(&map, 2).unwrap();
        env.reset();
        assert_eq!(env.step(AbsDir::N).unwrap().done, None);
        assert_eq!(env.step(AbsDir::N).unwrap().done, Some(DoneCause::StepLimit));
    }

    #[test]
    fn region_boundary_bounces() {
        let map = load_map("B..\n...\n..G\n").unwrap();
        let corridor = [map.start(), HexCoord::new(1, 1), HexCoord::new(2, 2), HexCoord::new(4, 2)];
        let region = RegionMask::from_cells(&map, corridor);
        let mut env = NavEnv::restrict(&map, &region, 50).unwrap();
        env.reset();
        let t = env.step(AbsDir::S).unwrap();
        assert_eq!((t.next_state, t.reward), (map.start(), -100.0));
        let outside = RegionMask::from_cells(&map, [map.start()]);
        assert!(NavEnv::restrict(&map, &outside, 50).is_err());
    }
}
