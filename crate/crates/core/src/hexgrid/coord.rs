use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell in doubled coordinates: `i` is the doubled row index, `j` the
/// column. Valid cells have `i + j` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(i32, i32)", into = "(i32, i32)")]
pub struct HexCoord {
    pub i: i32,
    pub j: i32,
}

impl HexCoord {
    pub const fn new(i: i32, j: i32) -> Self {
        Self { i, j }
    }

    pub const fn has_valid_parity(self) -> bool {
        (self.i + self.j).rem_euclid(2) == 0
    }

    pub fn neighbor(self, dir: AbsDir) -> Self {
        let (di, dj) = dir.offset();
        Self::new(self.i + di, self.j + dj)
    }

    /// The six neighbors in [`AbsDir`] order, unfiltered by any bounds.
    pub fn neighbors(self) -> [(AbsDir, HexCoord); 6] {
        AbsDir::ALL.map(|d| (d, self.neighbor(d)))
    }

    /// Direction of the single move from `self` to `other`, if adjacent.
    pub fn direction_to(self, other: HexCoord) -> Option<AbsDir> {
        let delta = (other.i - self.i, other.j - self.j);
        AbsDir::ALL.into_iter().find(|d| d.offset() == delta)
    }
}

impl From<(i32, i32)> for HexCoord {
    fn from((i, j): (i32, i32)) -> Self {
        Self::new(i, j)
    }
}

impl From<HexCoord> for (i32, i32) {
    fn from(c: HexCoord) -> Self {
        (c.i, c.j)
    }
}

impl fmt::Display for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// Absolute heading, numbered clockwise from north.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
#[repr(u8)]
pub enum AbsDir {
    N = 0,
    NE = 1,
    SE = 2,
    S = 3,
    SW = 4,
    NW = 5,
}

impl AbsDir {
    pub const ALL: [AbsDir; 6] = [
        AbsDir::N,
        AbsDir::NE,
        AbsDir::SE,
        AbsDir::S,
        AbsDir::SW,
        AbsDir::NW,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(value: usize) -> Self {
        Self::ALL[value % 6]
    }

    /// Rotate clockwise by `steps` sixths of a turn (negative = counterclockwise).
    pub const fn rotate(self, steps: i32) -> Self {
        Self::ALL[(self as i32 + steps).rem_euclid(6) as usize]
    }

    /// Clockwise offset in sixths from `self` to `other`, in `0..6`.
    pub const fn offset_to(self, other: AbsDir) -> u8 {
        (other as i32 - self as i32).rem_euclid(6) as u8
    }

    pub const fn offset(self) -> (i32, i32) {
        match self {
            AbsDir::N => (-2, 0),
            AbsDir::NE => (-1, 1),
            AbsDir::SE => (1, 1),
            AbsDir::S => (2, 0),
            AbsDir::SW => (1, -1),
            AbsDir::NW => (-1, -1),
        }
    }

    pub const fn opposite(self) -> Self {
        self.rotate(3)
    }
}

impl From<AbsDir> for u8 {
    fn from(d: AbsDir) -> u8 {
        d as u8
    }
}

impl TryFrom<u8> for AbsDir {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        if v < 6 {
            Ok(AbsDir::from_index(v as usize))
        } else {
            Err(format!("direction {v} out of range 0..6"))
        }
    }
}

/// Minimum number of moves between two cells on an obstacle-free lattice.
pub fn step_distance(a: HexCoord, b: HexCoord) -> u32 {
    let di = (a.i - b.i).unsigned_abs();
    let dj = (a.j - b.j).unsigned_abs();
    dj + di.saturating_sub(dj) / 2
}

/// The `6K` cells at step distance exactly `k` from `center`, walked
/// clockwise starting at the northern corner.
///
/// Each side of the ring starts at a corner `k * offset(d)` and advances
/// `k - 1` times along direction `d + 2`.
pub fn k_ring(center: HexCoord, k: u32) -> Vec<HexCoord> {
    assert!(k >= 1, "k_ring requires k >= 1");
    let k = k as i32;
    let mut out = Vec::with_capacity(6 * k as usize);
    for dir in AbsDir::ALL {
        let (ci, cj) = dir.offset();
        let (si, sj) = dir.rotate(2).offset();
        for t in 0..k {
            out.push(HexCoord::new(
                center.i + k * ci + t * si,
                center.j + k * cj + t * sj,
            ));
        }
    }
    out
}

/// Center of a cell in centimetres for hexagons of edge length `edge`.
pub fn cell_center(c: HexCoord, edge: f64) -> (f64, f64) {
    (
        f64::from(c.j) * 1.5 * edge,
        f64::from(c.i) * (3f64.sqrt() / 2.0) * edge,
    )
}

/// Number of doubled rows and columns needed to cover a rectangle.
///
/// `rows_extent_cm` runs along the doubled-row axis (rows are spaced
/// `sqrt(3)/2 * edge` apart); `cols_extent_cm` runs along the column axis
/// (columns are spaced `3/2 * edge` apart). Both counts are rounded to the
/// nearest integer, halves away from zero.
pub fn rasterize_dims(rows_extent_cm: f64, cols_extent_cm: f64, edge_cm: f64) -> Result<(u32, u32)> {
    for (name, v) in [
        ("row extent", rows_extent_cm),
        ("column extent", cols_extent_cm),
        ("edge length", edge_cm),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Contract(format!("{name} must be positive, got {v}")));
        }
    }
    let n = (rows_extent_cm / (3f64.sqrt() / 2.0 * edge_cm) + 1.0).round();
    let m = ((cols_extent_cm + edge_cm) / (1.5 * edge_cm) - 1.0).round();
    if n < 1.0 || m < 1.0 {
        return Err(Error::Contract(format!(
            "rectangle too small for edge {edge_cm}: got {n} x {m}"
        )));
    }
    Ok((n as u32, m as u32))
}
