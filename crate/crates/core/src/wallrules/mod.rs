//! Rule-based trajectory generation and exploration-space reduction.
//!
//! * wall following with a left or right hand priority,
//! * K-step reduction of a trajectory and the closed-loop region spanned by
//!   two reduced trajectories,
//! * the Pledge rule used to guide early exploration.

mod follow;
mod pledge;
mod reduce;
mod region;
mod trajectory;

pub use follow::{
    default_step_cap, relative_to_absolute, wall_follow, wall_follow_from, Hand, RelAction,
};
pub use pledge::{pledge_action, pledge_navigate, Chirality, PledgeState, PledgeWalk};
pub use reduce::{k_step_path, reduce_trajectory, reduce_trajectory_traced, Splice};
pub use region::{closed_region, RegionMask, Restricted};
pub use trajectory::Trajectory;

use crate::error::Result;
use crate::hexgrid::HexMap;

/// Both wall-following tours, their reductions and the enclosed region.
#[derive(Debug, Clone)]
pub struct ReducedSpace {
    pub k: u32,
    pub left: Trajectory,
    pub right: Trajectory,
    pub left_reduced: Trajectory,
    pub right_reduced: Trajectory,
    pub splices: Vec<Splice>,
    pub region: RegionMask,
}

impl ReducedSpace {
    pub fn build(map: &HexMap, k: u32) -> Result<Self> {
        let left = wall_follow(map, Hand::Left, None)?;
        let right = wall_follow(map, Hand::Right, None)?;
        let (left_reduced, mut splices) = reduce_trajectory_traced(map, &left, k)?;
        let (right_reduced, more) = reduce_trajectory_traced(map, &right, k)?;
        splices.extend(more);
        let region = closed_region(map, &left_reduced, &right_reduced);
        Ok(Self {
            k,
            left,
            right,
            left_reduced,
            right_reduced,
            splices,
            region,
        })
    }

    pub fn restricted<'a>(&'a self, map: &'a HexMap) -> Restricted<'a> {
        Restricted {
            map,
            region: &self.region,
        }
    }
}
