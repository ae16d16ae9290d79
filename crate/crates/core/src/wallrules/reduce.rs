//! K-step trajectory reduction.
//!
//! For every state `s_i` of a trajectory we look at the ring of cells at
//! step distance exactly `K`. If one of them reappears further down the
//! trajectory more than `K` moves later, the detour between the two is
//! replaced by a straight `K`-step path, provided one exists that avoids
//! every obstacle. Passes repeat until the length stops changing.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hexgrid::{k_ring, step_distance, AbsDir, HexCoord, Terrain};
use crate::wallrules::Trajectory;

/// One shortcut applied during reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Splice {
    pub from: HexCoord,
    pub to: HexCoord,
    /// Length of the inserted path, always `K`.
    pub shortcut_len: usize,
    /// Length of the trajectory segment it replaced.
    pub replaced_len: usize,
}

/// A passable monotone path of exactly `k` moves from `from` to `to`.
///
/// Every move must bring the walker one step closer to `to`. Among all such
/// paths the one with the lexicographically smallest action sequence (in
/// [`AbsDir`] order) is returned, or `None` when every one is blocked.
pub fn k_step_path(
    terrain: &impl Terrain,
    from: HexCoord,
    to: HexCoord,
    k: u32,
) -> Result<Option<Vec<HexCoord>>> {
    if step_distance(from, to) != k {
        return Err(Error::Contract(format!(
            "k_step_path: step distance from {from} to {to} is {}, not {k}",
            step_distance(from, to)
        )));
    }
    let mut path = Vec::with_capacity(k as usize + 1);
    path.push(from);
    Ok(monotone_dfs(terrain, to, &mut path).then_some(path))
}

fn monotone_dfs(terrain: &impl Terrain, to: HexCoord, path: &mut Vec<HexCoord>) -> bool {
    let here = *path.last().expect("path starts non-empty");
    if here == to {
        return true;
    }
    let remaining = step_distance(here, to);
    for d in AbsDir::ALL {
        let next = here.neighbor(d);
        if step_distance(next, to) + 1 != remaining || !terrain.passable(next) {
            continue;
        }
        path.push(next);
        if monotone_dfs(terrain, to, path) {
            return true;
        }
        path.pop();
    }
    false
}

pub fn reduce_trajectory(terrain: &impl Terrain, traj: &Trajectory, k: u32) -> Result<Trajectory> {
    reduce_trajectory_traced(terrain, traj, k).map(|(t, _)| t)
}

/// Reduce and also report every splice, in the order they were applied.
pub fn reduce_trajectory_traced(
    terrain: &impl Terrain,
    traj: &Trajectory,
    k: u32,
) -> Result<(Trajectory, Vec<Splice>)> {
    if k == 0 {
        return Err(Error::Contract("reduction step K must be at least 1".into()));
    }
    let ku = k as usize;
    let mut states = traj.states.clone();
    let mut splices = Vec::new();

    loop {
        let mut changed = false;
        let mut last_seen = last_occurrences(&states);
        let mut i = 0;
        while i + ku + 1 < states.len() {
            let here = states[i];
            let mut candidates: Vec<(usize, HexCoord)> = k_ring(here, k)
                .into_iter()
                .filter_map(|c| last_seen.get(&c).map(|&j| (j, c)))
                .filter(|&(j, _)| j > i + ku)
                .collect();
            candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            for (j, target) in candidates {
                if let Some(path) = k_step_path(terrain, here, target, k)? {
                    splices.push(Splice {
                        from: here,
                        to: target,
                        shortcut_len: ku,
                        replaced_len: j - i,
                    });
                    states.splice(i..=j, path);
                    last_seen = last_occurrences(&states);
                    changed = true;
                    break;
                }
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    Ok((Trajectory::from_states(states)?, splices))
}

fn last_occurrences(states: &[HexCoord]) -> HashMap<HexCoord, usize> {
    states.iter().enumerate().map(|(k, &c)| (c, k)).collect()
}
