//! Closed-loop region between two trajectories.

use std::collections::VecDeque;

use crate::hexgrid::{CellIndexer, HexCoord, HexMap, Terrain};
use crate::wallrules::Trajectory;

/// Cells on, or enclosed by, a closed loop of trajectory states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionMask {
    indexer: CellIndexer,
    inside: Vec<bool>,
    count: usize,
}

impl RegionMask {
    /// Every free cell of the map.
    pub fn all_free(map: &HexMap) -> Self {
        let inside: Vec<bool> = (0..map.n_cells())
            .map(|k| map.is_free(map.coord_of(k)))
            .collect();
        Self::from_flags(map.indexer(), inside)
    }

    pub fn from_cells(map: &HexMap, cells: impl IntoIterator<Item = HexCoord>) -> Self {
        let mut inside = vec![false; map.n_cells()];
        for c in cells {
            if let Some(k) = map.index_of(c) {
                inside[k] = true;
            }
        }
        Self::from_flags(map.indexer(), inside)
    }

    fn from_flags(indexer: CellIndexer, inside: Vec<bool>) -> Self {
        let count = inside.iter().filter(|&&b| b).count();
        Self {
            indexer,
            inside,
            count,
        }
    }

    #[inline]
    pub fn contains(&self, c: HexCoord) -> bool {
        self.indexer.index_of(c).is_some_and(|k| self.inside[k])
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn cells(&self) -> impl Iterator<Item = HexCoord> + '_ {
        self.inside
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| self.indexer.coord_of(k))
    }

    /// ASCII overlay: region cells drawn as `*`, start and goal kept.
    pub fn overlay(&self, map: &HexMap) -> String {
        let doc = crate::hexgrid::render_ascii(map);
        let header_lines = doc.lines().take_while(|l| l.starts_with("# ")).count();
        let mut out = String::with_capacity(doc.len());
        for (n, line) in doc.lines().enumerate() {
            if n < header_lines {
                out.push_str(line);
            } else {
                let r = n - header_lines;
                for (c, ch) in line.chars().enumerate() {
                    let idx = r * map.m_cols() + c;
                    out.push(if ch == '.' && self.inside[idx] { '*' } else { ch });
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Map restricted to a region; cells outside behave like obstacles.
#[derive(Debug, Clone, Copy)]
pub struct Restricted<'a> {
    pub map: &'a HexMap,
    pub region: &'a RegionMask,
}

impl Terrain for Restricted<'_> {
    #[inline]
    fn passable(&self, c: HexCoord) -> bool {
        self.map.is_free(c) && self.region.contains(c)
    }
}

/// States of both trajectories plus every free cell that cannot be reached
/// from outside the map without stepping on one of those states.
///
/// The outside is a one-cell margin around the map's bounding box; the
/// flood fill crosses obstacles and unknown cells freely, so only the
/// trajectory cells act as walls.
pub fn closed_region(map: &HexMap, left: &Trajectory, right: &Trajectory) -> RegionMask {
    let n = map.n_rows() as i32;
    let m = map.m_cols() as i32;
    // Extended box: i in [-2, 2n+1], j in [-1, m].
    let width = (m + 2) as usize;
    let height = (2 * n + 4) as usize;
    let ext_index = |c: HexCoord| -> Option<usize> {
        if c.i < -2 || c.i > 2 * n + 1 || c.j < -1 || c.j > m {
            return None;
        }
        Some((c.i + 2) as usize * width + (c.j + 1) as usize)
    };

    let mut wall = vec![false; width * height];
    for &c in left.states.iter().chain(&right.states) {
        if let Some(k) = ext_index(c) {
            wall[k] = true;
        }
    }

    let mut outside = vec![false; width * height];
    let mut queue = VecDeque::new();
    for i in -2..=2 * n + 1 {
        for j in -1..=m {
            let c = HexCoord::new(i, j);
            if !c.has_valid_parity() || map.in_bounds(c) {
                continue;
            }
            let k = ext_index(c).expect("inside the box");
            if !wall[k] && !outside[k] {
                outside[k] = true;
                queue.push_back(c);
            }
        }
    }
    while let Some(c) = queue.pop_front() {
        for (_, nb) in c.neighbors() {
            let Some(k) = ext_index(nb) else { continue };
            if wall[k] || outside[k] {
                continue;
            }
            outside[k] = true;
            queue.push_back(nb);
        }
    }

    let inside = (0..map.n_cells())
        .map(|idx| {
            let c = map.coord_of(idx);
            let k = ext_index(c).expect("map cells lie in the box");
            wall[k] || (map.is_free(c) && !outside[k])
        })
        .collect();
    RegionMask::from_flags(map.indexer(), inside)
}
