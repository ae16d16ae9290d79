//! Empirical checks of the reduction guarantees on a concrete map.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hexgrid::{render_ascii, HexMap};
use crate::planners::bfs_shortest;
use crate::wallrules::{reduce_trajectory, ReducedSpace, Splice};

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub k: u32,
    pub full_len: usize,
    /// `None` when the region holds no path at all.
    pub region_len: Option<usize>,
    pub free_cells: usize,
    pub region_cells: usize,
    pub left_len: usize,
    pub right_len: usize,
    pub left_reduced_len: usize,
    pub right_reduced_len: usize,
    pub splices: usize,
    /// Every splice replaced a segment longer than `k`.
    pub splices_shorten: bool,
    /// Reduced trajectories are no longer than the originals.
    pub monotone: bool,
    /// Reducing a reduced trajectory again changes nothing.
    pub idempotent: bool,
    #[serde(skip)]
    bad_splices: Vec<Splice>,
    #[serde(skip)]
    space: Option<ReducedSpace>,
}

impl TheoremReport {
    /// Region keeps an optimal path.
    pub fn region_optimal(&self) -> bool {
        self.region_len == Some(self.full_len)
    }

    pub fn passed(&self) -> bool {
        self.region_optimal() && self.splices_shorten && self.monotone && self.idempotent
    }

    /// Human-readable dump of everything needed to reproduce a failure.
    pub fn counterexample(&self, map: &HexMap) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "K = {}", self.k);
        let _ = writeln!(
            s,
            "shortest path: full map {}, region {:?}",
            self.full_len, self.region_len
        );
        let _ = writeln!(
            s,
            "monotone {}, idempotent {}, splices {} ({} not shortening)",
            self.monotone,
            self.idempotent,
            self.splices,
            self.bad_splices.len()
        );
        for sp in &self.bad_splices {
            let _ = writeln!(
                s,
                "  splice {} -> {}: replaced {} with {}",
                sp.from, sp.to, sp.replaced_len, sp.shortcut_len
            );
        }
        let _ = writeln!(s, "map:\n{}", render_ascii(map));
        if let Some(space) = &self.space {
            let _ = writeln!(s, "left reduced:  {}", space.left_reduced.to_json_line());
            let _ = writeln!(s, "right reduced: {}", space.right_reduced.to_json_line());
            let _ = writeln!(s, "region:\n{}", space.region.overlay(map));
        }
        s
    }
}

/// Build the reduced space and verify the optimal-path and splice
/// guarantees against a BFS oracle.
pub fn check_theorems(map: &HexMap, k: u32) -> Result<TheoremReport> {
    let full = bfs_shortest(map, None).ok_or(Error::Unsolvable {
        start: map.start(),
        goal: map.goal(),
    })?;
    let space = ReducedSpace::build(map, k)?;
    let region_len = bfs_shortest(map, Some(&space.region)).map(|p| p.len());
    let bad_splices: Vec<Splice> = space
        .splices
        .iter()
        .filter(|s| s.replaced_len <= s.shortcut_len)
        .copied()
        .collect();
    let monotone = space.left_reduced.steps() <= space.left.steps()
        && space.right_reduced.steps() <= space.right.steps();
    let idempotent = reduce_trajectory(map, &space.left_reduced, k)? == space.left_reduced
        && reduce_trajectory(map, &space.right_reduced, k)? == space.right_reduced;
    Ok(TheoremReport {
        k,
        full_len: full.len(),
        region_len,
        free_cells: map.free_count(),
        region_cells: space.region.len(),
        left_len: space.left.steps(),
        right_len: space.right.steps(),
        left_reduced_len: space.left_reduced.steps(),
        right_reduced_len: space.right_reduced.steps(),
        splices: space.splices.len(),
        splices_shorten: bad_splices.is_empty(),
        monotone,
        idempotent,
        bad_splices,
        space: Some(space),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::load_map;

    #[test]
    fn corridor_passes_trivially() {
        let map = load_map("B....G\n######\n").unwrap();
        for k in 1..=3 {
            let r = check_theorems(&map, k).unwrap();
            assert!(r.passed(), "{}", r.counterexample(&map));
            assert_eq!(r.region_cells, r.free_cells);
        }
    }

    #[test]
    fn open_room() {
        let map = load_map("B.....\n......\n......\n.....G\n").unwrap();
        let r = check_theorems(&map, 2).unwrap();
        assert!(r.passed());
        assert!(r.counterexample(&map).contains("region:"));
    }

    #[test]
    fn unsolvable() {
        let map = load_map("B#.\n##.\n..G\n").unwrap();
        assert!(matches!(check_theorems(&map, 1), Err(Error::Unsolvable { .. })));
    }
}
