use std::collections::VecDeque;

use crate::hexgrid::{HexCoord, HexMap, Terrain};
use crate::planners::Path;
use crate::wallrules::{RegionMask, Restricted};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Cells removed from the frontier and expanded.
    pub expanded: usize,
}

/// Minimum-hop path on the map, optionally confined to `region`.
pub fn bfs_shortest(map: &HexMap, region: Option<&RegionMask>) -> Option<Path> {
    bfs_with_stats(map, region).0
}

pub fn bfs_with_stats(map: &HexMap, region: Option<&RegionMask>) -> (Option<Path>, SearchStats) {
    match region {
        Some(region) => bfs_path(&Restricted { map, region }, map, map.start(), map.goal()),
        None => bfs_path(map, map, map.start(), map.goal()),
    }
}

/// BFS over `terrain`, with `map` supplying the index space. Neighbors are
/// expanded in direction order, so the result is deterministic.
pub fn bfs_path(
    terrain: &impl Terrain,
    map: &HexMap,
    start: HexCoord,
    goal: HexCoord,
) -> (Option<Path>, SearchStats) {
    let mut stats = SearchStats::default();
    if !terrain.passable(start) || !terrain.passable(goal) {
        return (None, stats);
    }
    let mut parent: Vec<Option<usize>> = vec![None; map.n_cells()];
    let start_k = map.index_of(start).expect("start lies on the map");
    parent[start_k] = Some(start_k);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        stats.expanded += 1;
        if c == goal {
            break;
        }
        let ck = map.index_of(c).expect("queued cells lie on the map");
        for (_, nb) in c.neighbors() {
            if !terrain.passable(nb) {
                continue;
            }
            let Some(k) = map.index_of(nb) else { continue };
            if parent[k].is_none() {
                parent[k] = Some(ck);
                queue.push_back(nb);
            }
        }
    }
    (rebuild(map, &parent, start_k, goal), stats)
}

pub(super) fn rebuild(
    map: &HexMap,
    parent: &[Option<usize>],
    start_k: usize,
    goal: HexCoord,
) -> Option<Path> {
    let mut k = map.index_of(goal)?;
    parent[k]?;
    let mut states = vec![goal];
    while k != start_k {
        k = parent[k].expect("reached cells have parents");
        states.push(map.coord_of(k));
    }
    states.reverse();
    Some(Path { states })
}
