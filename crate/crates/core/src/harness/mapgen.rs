//! Seeded synthetic maps.
//!
//! Presets:
//!
//! * `room-35x19-open`: a walled room 35 doubled rows high (18 file lines)
//!   and 19 columns wide, with stretches of unknown wall. Start `(33, 17)`
//!   near the bottom-right corner, goal `(2, 2)` near the top-left.
//! * `room-35x19-obstacles`: the same room plus six obstacle blobs.
//! * `multiroom-87x59`: 87 doubled rows by 59 columns split into a 3x3 grid
//!   of rooms by one-cell walls. Doors are two or three cells wide: a random
//!   spanning tree of doors plus two extra ones. Eighteen obstacle blobs
//!   are scattered around. Start `(84, 56)`, goal `(2, 22)`.
//!
//! Random maps for property campaigns scatter obstacle blobs and place
//! start and goal on free cells touching the outer wall.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hexgrid::{k_ring, step_distance, CellIndexer, CellKind, HexCoord, HexMap};
use crate::planners::bfs_shortest;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    RoomOpen,
    RoomObstacles,
    Multiroom,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::RoomOpen, Preset::RoomObstacles, Preset::Multiroom];

    pub fn name(self) -> &'static str {
        match self {
            Preset::RoomOpen => "room-35x19-open",
            Preset::RoomObstacles => "room-35x19-obstacles",
            Preset::Multiroom => "multiroom-87x59",
        }
    }

    /// Seed used for the bundled map files.
    pub fn default_seed(self) -> u64 {
        match self {
            Preset::RoomOpen => 1,
            Preset::RoomObstacles => 2,
            Preset::Multiroom => 3,
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown preset '{s}'")))
    }
}

/// Mutable grid used while generating.
struct Grid {
    idx: CellIndexer,
    cells: Vec<CellKind>,
}

impl Grid {
    fn new(n_rows: usize, m_cols: usize) -> Self {
        Self {
            idx: CellIndexer { n_rows, m_cols },
            cells: vec![CellKind::Free; n_rows * m_cols],
        }
    }

    fn at(r: usize, c: usize) -> HexCoord {
        HexCoord::new(2 * r as i32 + (c as i32 & 1), c as i32)
    }

    fn set(&mut self, c: HexCoord, kind: CellKind) {
        if let Some(k) = self.idx.index_of(c) {
            self.cells[k] = kind;
        }
    }

    fn kind(&self, c: HexCoord) -> Option<CellKind> {
        self.idx.index_of(c).map(|k| self.cells[k])
    }

    fn blob(&mut self, center: HexCoord, radius: u32, kind: CellKind) {
        self.set(center, kind);
        for k in 1..=radius {
            for c in k_ring(center, k) {
                self.set(c, kind);
            }
        }
    }

    fn into_map(self, start: HexCoord, goal: HexCoord) -> Result<HexMap> {
        HexMap::new(self.idx.n_rows, self.idx.m_cols, self.cells, start, goal)
    }

    /// Free cells with a blocked or off-map neighbour that is connected to
    /// the outside of the map through blocked cells.
    fn outer_wall_cells(&self) -> Vec<HexCoord> {
        let n = self.idx.len();
        let mut outer = vec![false; n];
        let mut queue = VecDeque::new();
        for k in 0..n {
            let c = self.idx.coord_of(k);
            if self.cells[k] != CellKind::Free
                && c.neighbors().iter().any(|&(_, nb)| self.idx.index_of(nb).is_none())
            {
                outer[k] = true;
                queue.push_back(c);
            }
        }
        while let Some(c) = queue.pop_front() {
            for (_, nb) in c.neighbors() {
                if let Some(k) = self.idx.index_of(nb) {
                    if !outer[k] && self.cells[k] != CellKind::Free {
                        outer[k] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
        (0..n)
            .filter(|&k| self.cells[k] == CellKind::Free)
            .map(|k| self.idx.coord_of(k))
            .filter(|c| {
                c.neighbors()
                    .iter()
                    .any(|&(_, nb)| self.idx.index_of(nb).is_none_or(|k| outer[k]))
            })
            .collect()
    }

    fn component(&self, from: HexCoord) -> Vec<bool> {
        let mut seen = vec![false; self.idx.len()];
        let Some(k0) = self.idx.index_of(from) else { return seen };
        seen[k0] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(c) = queue.pop_front() {
            for (_, nb) in c.neighbors() {
                if let Some(k) = self.idx.index_of(nb) {
                    if !seen[k] && self.cells[k] == CellKind::Free {
                        seen[k] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
        seen
    }
}

pub fn preset_map(preset: Preset, seed: u64) -> Result<HexMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let map = match preset {
        Preset::RoomOpen => room(&mut rng, false)?,
        Preset::RoomObstacles => room(&mut rng, true)?,
        Preset::Multiroom => multiroom(&mut rng)?,
    };
    Ok(map.with_name(preset.name()))
}

/// Walled rectangle spanning doubled rows `0..extent` and `cols` columns.
/// Cells past the extent (odd columns of the last line) are unknown; the
/// top line, the side columns and the last even-column cells are walls.
fn framed(extent: usize, cols: usize) -> Grid {
    let lines = extent.div_ceil(2);
    let mut g = Grid::new(lines, cols);
    for k in 0..g.idx.len() {
        let c = g.idx.coord_of(k);
        let (i, j) = (c.i as usize, c.j as usize);
        g.cells[k] = if i >= extent {
            CellKind::Unknown
        } else if i <= 1 || j == 0 || j == cols - 1 || i == extent - 1 {
            CellKind::Obstacle
        } else {
            CellKind::Free
        };
    }
    g
}

/// Scatter `count` blobs of radius `radii`, keeping them `margin` steps
/// away from `keep` and never disconnecting `keep[0]` from `keep[1]`.
fn scatter(
    g: &mut Grid,
    rng: &mut ChaCha8Rng,
    count: usize,
    radii: std::ops::RangeInclusive<u32>,
    margin: u32,
    keep: [HexCoord; 2],
) {
    let goal_k = g.idx.index_of(keep[1]).expect("goal on map");
    let mut placed = 0;
    let mut attempts = 0;
    while placed < count && attempts < 10_000 {
        attempts += 1;
        let center = g.idx.coord_of(rng.gen_range(0..g.idx.len()));
        let radius = rng.gen_range(radii.clone());
        if keep.iter().any(|&x| step_distance(center, x) <= radius + margin) {
            continue;
        }
        let backup = g.cells.clone();
        g.blob(center, radius, CellKind::Obstacle);
        if !g.component(keep[0])[goal_k] {
            g.cells = backup;
            continue;
        }
        placed += 1;
    }
}

const ROOM_EXTENT: usize = 35;
const ROOM_COLS: usize = 19;

fn room(rng: &mut ChaCha8Rng, obstacles: bool) -> Result<HexMap> {
    let mut g = framed(ROOM_EXTENT, ROOM_COLS);
    let start = HexCoord::new(33, 17);
    let goal = HexCoord::new(2, 2);

    // Stretches of wall the scanner could not see.
    for _ in 0..3 {
        let c = if rng.gen_bool(0.5) { 0 } else { ROOM_COLS - 1 };
        let r0 = rng.gen_range(3..ROOM_EXTENT / 2 - 5);
        for r in r0..r0 + rng.gen_range(2..5) {
            g.set(Grid::at(r, c), CellKind::Unknown);
        }
    }
    if obstacles {
        scatter(&mut g, rng, 6, 1..=2, 2, [start, goal]);
    }
    g.into_map(start, goal).map(|m| m.with_edge_cm(15.8))
}

const MR_EXTENT: usize = 87;
const MR_COLS: usize = 59;

fn multiroom(rng: &mut ChaCha8Rng) -> Result<HexMap> {
    let mut g = framed(MR_EXTENT, MR_COLS);
    let lines = MR_EXTENT.div_ceil(2);
    let wall_lines = [14, 29];
    let wall_cols = [20, 39];
    for &r in &wall_lines {
        for c in 0..MR_COLS {
            g.set(Grid::at(r, c), CellKind::Obstacle);
        }
    }
    for &c in &wall_cols {
        for r in 0..lines {
            if g.kind(Grid::at(r, c)) == Some(CellKind::Free) {
                g.set(Grid::at(r, c), CellKind::Obstacle);
            }
        }
    }
    // Room (a, b) spans line band a and column band b (exclusive bounds).
    let line_bands = [(1, 14), (15, 29), (30, lines - 1)];
    let col_bands = [(1, 20), (21, 39), (40, MR_COLS - 1)];

    let mut edges: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            if b + 1 < 3 {
                edges.push(((a, b), (a, b + 1)));
            }
            if a + 1 < 3 {
                edges.push(((a, b), (a + 1, b)));
            }
        }
    }
    edges.shuffle(rng);
    let mut parent: Vec<usize> = (0..9).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut doors = Vec::new();
    let mut extra = Vec::new();
    for &(u, v) in &edges {
        let (ru, rv) = (find(&mut parent, u.0 * 3 + u.1), find(&mut parent, v.0 * 3 + v.1));
        if ru != rv {
            parent[ru] = rv;
            doors.push((u, v));
        } else {
            extra.push((u, v));
        }
    }
    doors.extend(extra.into_iter().take(2));

    for ((a, b), (a2, b2)) in doors {
        let width = rng.gen_range(2..=3);
        if a == a2 {
            let c = wall_cols[b.min(b2)];
            let (lo, hi) = line_bands[a];
            let r0 = rng.gen_range(lo + 1..hi - width);
            for r in r0..r0 + width {
                g.set(Grid::at(r, c), CellKind::Free);
            }
        } else {
            let r = wall_lines[a.min(a2)];
            let (lo, hi) = col_bands[b];
            let c0 = rng.gen_range(lo + 1..hi - width);
            for c in c0..c0 + width {
                g.set(Grid::at(r, c), CellKind::Free);
            }
        }
    }

    let start = HexCoord::new(84, 56);
    let goal = HexCoord::new(2, 22);
    scatter(&mut g, rng, 18, 0..=2, 3, [start, goal]);
    g.into_map(start, goal).map(|m| m.with_edge_cm(22.0))
}

/// Random solvable map with start and goal on free cells touching the outer
/// wall. Obstacle blobs cover roughly `density` of the cells.
pub fn random_map(
    rng: &mut ChaCha8Rng,
    n_rows: usize,
    m_cols: usize,
    density: f64,
) -> Result<HexMap> {
    if n_rows * m_cols < 4 {
        return Err(Error::Contract("random map needs at least four cells".into()));
    }
    for _ in 0..1000 {
        let mut g = Grid::new(n_rows, m_cols);
        let target = (density * (n_rows * m_cols) as f64) as usize;
        let mut blocked = 0;
        while blocked < target {
            let center = g.idx.coord_of(rng.gen_range(0..g.idx.len()));
            let radius = if rng.gen_bool(0.7) { 0 } else { 1 };
            let kind = if rng.gen_bool(0.85) {
                CellKind::Obstacle
            } else {
                CellKind::Unknown
            };
            g.blob(center, radius, kind);
            blocked = g.cells.iter().filter(|&&k| k != CellKind::Free).count();
        }
        let candidates = g.outer_wall_cells();
        if candidates.len() < 2 {
            continue;
        }
        let start = *candidates.choose(rng).expect("non-empty");
        let reach = g.component(start);
        let goals: Vec<HexCoord> = candidates
            .iter()
            .copied()
            .filter(|&c| c != start && reach[g.idx.index_of(c).expect("on map")])
            .collect();
        let Some(&goal) = goals.choose(rng) else { continue };
        let map = g.into_map(start, goal)?;
        debug_assert!(bfs_shortest(&map, None).is_some());
        return Ok(map);
    }
    Err(Error::InvalidMap(format!(
        "no solvable {n_rows}x{m_cols} map at density {density} after 1000 attempts"
    )))
}

/// Map number `index` of a seeded campaign: sizes from 4x4 to 18x18 and
/// densities up to 0.35.
pub fn campaign_map(seed: u64, index: usize) -> Result<HexMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(crate::learners::seed_for_run(seed, index));
    let n = rng.gen_range(4..=18);
    let m = rng.gen_range(4..=18);
    let density = rng.gen_range(0.0..0.35);
    random_map(&mut rng, n, m, density).map(|map| map.with_name(format!("campaign-{seed}-{index}")))
}
