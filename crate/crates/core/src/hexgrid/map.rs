//! Rectangular hex maps and the `.hexmap` text format.
//!
//! A document is a few optional `# key: value` header lines followed by one
//! line per offset row. Offset cell `(r, c)` lives at doubled coordinate
//! `(2r + c mod 2, c)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hexgrid::coord::HexCoord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Free,
    Obstacle,
    /// Unmapped area. Never traversable.
    Unknown,
}

impl CellKind {
    pub const fn is_free(self) -> bool {
        matches!(self, CellKind::Free)
    }
}

/// Anything that can answer "may the robot stand on this cell?".
pub trait Terrain {
    fn passable(&self, c: HexCoord) -> bool;
}

impl<T: Terrain + ?Sized> Terrain for &T {
    fn passable(&self, c: HexCoord) -> bool {
        (**self).passable(c)
    }
}

/// Dense row-major indexing of the valid cells of an `n_rows x m_cols` map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellIndexer {
    pub n_rows: usize,
    pub m_cols: usize,
}

impl CellIndexer {
    pub fn len(&self) -> usize {
        self.n_rows * self.m_cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index_of(&self, c: HexCoord) -> Option<usize> {
        if c.j < 0 || c.i < 0 || c.j as usize >= self.m_cols {
            return None;
        }
        let odd = c.j & 1;
        if (c.i & 1) != odd {
            return None;
        }
        let r = ((c.i - odd) / 2) as usize;
        if r >= self.n_rows {
            return None;
        }
        Some(r * self.m_cols + c.j as usize)
    }

    #[inline]
    pub fn coord_of(&self, idx: usize) -> HexCoord {
        let r = (idx / self.m_cols) as i32;
        let c = (idx % self.m_cols) as i32;
        HexCoord::new(2 * r + (c & 1), c)
    }
}

/// Occupancy lattice with a start and a goal cell.
#[derive(Debug, Clone, PartialEq)]
pub struct HexMap {
    pub name: Option<String>,
    pub edge_cm: Option<f64>,
    indexer: CellIndexer,
    cells: Vec<CellKind>,
    start: HexCoord,
    goal: HexCoord,
}

impl HexMap {
    /// Build a map from row-major offset cells. Checks the start/goal invariants.
    pub fn new(
        n_rows: usize,
        m_cols: usize,
        cells: Vec<CellKind>,
        start: HexCoord,
        goal: HexCoord,
    ) -> Result<Self> {
        if n_rows == 0 || m_cols == 0 {
            return Err(Error::InvalidMap("map must have at least one cell".into()));
        }
        if cells.len() != n_rows * m_cols {
            return Err(Error::InvalidMap(format!(
                "expected {} cells, got {}",
                n_rows * m_cols,
                cells.len()
            )));
        }
        let map = Self {
            name: None,
            edge_cm: None,
            indexer: CellIndexer { n_rows, m_cols },
            cells,
            start,
            goal,
        };
        for (what, c) in [("start", start), ("goal", goal)] {
            match map.kind(c) {
                None => return Err(Error::InvalidMap(format!("{what} {c} is outside the map"))),
                Some(k) if !k.is_free() => {
                    return Err(Error::InvalidMap(format!("{what} {c} is not free")))
                }
                _ => {}
            }
        }
        if start == goal {
            return Err(Error::InvalidMap("start and goal coincide".into()));
        }
        Ok(map)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_edge_cm(mut self, edge: f64) -> Self {
        self.edge_cm = Some(edge);
        self
    }

    pub fn n_rows(&self) -> usize {
        self.indexer.n_rows
    }

    pub fn m_cols(&self) -> usize {
        self.indexer.m_cols
    }

    pub fn indexer(&self) -> CellIndexer {
        self.indexer
    }

    pub fn start(&self) -> HexCoord {
        self.start
    }

    pub fn goal(&self) -> HexCoord {
        self.goal
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    #[inline]
    pub fn index_of(&self, c: HexCoord) -> Option<usize> {
        self.indexer.index_of(c)
    }

    #[inline]
    pub fn coord_of(&self, idx: usize) -> HexCoord {
        self.indexer.coord_of(idx)
    }

    pub fn in_bounds(&self, c: HexCoord) -> bool {
        self.index_of(c).is_some()
    }

    #[inline]
    pub fn kind(&self, c: HexCoord) -> Option<CellKind> {
        self.index_of(c).map(|k| self.cells[k])
    }

    #[inline]
    pub fn is_free(&self, c: HexCoord) -> bool {
        matches!(self.kind(c), Some(CellKind::Free))
    }

    pub fn cells(&self) -> impl Iterator<Item = (HexCoord, CellKind)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, &kind)| (self.coord_of(k), kind))
    }

    pub fn free_cells(&self) -> impl Iterator<Item = HexCoord> + '_ {
        self.cells().filter(|(_, k)| k.is_free()).map(|(c, _)| c)
    }

    pub fn free_count(&self) -> usize {
        self.cells.iter().filter(|k| k.is_free()).count()
    }

    /// True when some neighbor is out of bounds or not free.
    pub fn is_wall_adjacent(&self, c: HexCoord) -> bool {
        c.neighbors().iter().any(|&(_, n)| !self.is_free(n))
    }

    pub fn parse(text: &str) -> Result<Self> {
        load_map(text)
    }
}

impl Terrain for HexMap {
    #[inline]
    fn passable(&self, c: HexCoord) -> bool {
        self.is_free(c)
    }
}

impl FromStr for HexMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        load_map(s)
    }
}

impl fmt::Display for HexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_ascii(self))
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parse a `.hexmap` document.
pub fn load_map(text: &str) -> Result<HexMap> {
    let mut name = None;
    let mut edge_cm = None;
    let mut rows: Vec<(usize, &str)> = Vec::new();

    let body = text.strip_suffix('\n').unwrap_or(text);
    for (k, line) in body.split('\n').enumerate() {
        let lineno = k + 1;
        if line.len() != line.trim_end().len() {
            return Err(parse_err(lineno, line.trim_end().len() + 1, "trailing whitespace"));
        }
        // Map rows never contain a space, so "# " marks a header.
        if let Some(header) = line.strip_prefix("# ") {
            if !rows.is_empty() {
                return Err(parse_err(lineno, 1, "header line after map rows"));
            }
            let Some((key, value)) = header.split_once(':') else {
                return Err(parse_err(lineno, 1, "header must be '# key: value'"));
            };
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "edge_cm" => {
                    let v: f64 = value
                        .parse()
                        .map_err(|_| parse_err(lineno, 1, format!("bad edge_cm '{value}'")))?;
                    if !(v.is_finite() && v > 0.0) {
                        return Err(parse_err(lineno, 1, "edge_cm must be positive"));
                    }
                    edge_cm = Some(v);
                }
                other => return Err(parse_err(lineno, 1, format!("unknown header key '{other}'"))),
            }
            continue;
        }
        rows.push((lineno, line));
    }

    if rows.is_empty() || rows == [(1, "")] {
        return Err(parse_err(1, 1, "document has no map rows"));
    }

    let m_cols = rows[0].1.chars().count();
    if m_cols == 0 {
        return Err(parse_err(rows[0].0, 1, "empty map row"));
    }
    let n_rows = rows.len();
    let mut cells = Vec::with_capacity(n_rows * m_cols);
    let mut start = None;
    let mut goal = None;
    for (r, &(lineno, line)) in rows.iter().enumerate() {
        let len = line.chars().count();
        if len != m_cols {
            return Err(parse_err(
                lineno,
                len.min(m_cols) + 1,
                format!("row has {len} cells, expected {m_cols}"),
            ));
        }
        for (c, ch) in line.chars().enumerate() {
            let coord = HexCoord::new(2 * r as i32 + (c as i32 & 1), c as i32);
            let kind = match ch {
                '.' => CellKind::Free,
                '#' => CellKind::Obstacle,
                '?' => CellKind::Unknown,
                'B' | 'G' => {
                    let slot = if ch == 'B' { &mut start } else { &mut goal };
                    if slot.is_some() {
                        let what = if ch == 'B' { "start" } else { "goal" };
                        return Err(parse_err(lineno, c + 1, format!("duplicate {what} '{ch}'")));
                    }
                    *slot = Some(coord);
                    CellKind::Free
                }
                other => {
                    return Err(parse_err(lineno, c + 1, format!("unknown character {other:?}")))
                }
            };
            cells.push(kind);
        }
    }
    let end_line = rows.last().map(|(l, _)| *l).unwrap_or(1);
    let start = start.ok_or_else(|| parse_err(end_line, 1, "missing start"))?;
    let goal = goal.ok_or_else(|| parse_err(end_line, 1, "missing goal"))?;

    let mut map = HexMap::new(n_rows, m_cols, cells, start, goal)?;
    map.name = name;
    map.edge_cm = edge_cm;
    Ok(map)
}

/// Render a map back into its canonical document form.
pub fn render_ascii(map: &HexMap) -> String {
    let mut out = String::with_capacity(map.n_cells() + map.n_rows() + 64);
    if let Some(name) = &map.name {
        out.push_str(&format!("# name: {name}\n"));
    }
    if let Some(edge) = map.edge_cm {
        out.push_str(&format!("# edge_cm: {edge}\n"));
    }
    for r in 0..map.n_rows() {
        for c in 0..map.m_cols() {
            let idx = r * map.m_cols() + c;
            let coord = map.coord_of(idx);
            let ch = if coord == map.start {
                'B'
            } else if coord == map.goal {
                'G'
            } else {
                match map.cells[idx] {
                    CellKind::Free => '.',
                    CellKind::Obstacle => '#',
                    CellKind::Unknown => '?',
                }
            };
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let m = load_map("B.\n.G").unwrap();
        assert_eq!(m.start(), HexCoord::new(0, 0));
        assert_eq!(m.goal(), HexCoord::new(3, 1));
        assert_eq!(m.n_rows(), 2);
        assert_eq!(m.m_cols(), 2);
        assert_eq!(render_ascii(&m), "B.\n.G\n");
    }

    #[test]
    fn missing_goal() {
        let err = load_map("B").unwrap_err();
        assert!(err.to_string().contains("missing goal"), "{err}");
        let err = load_map("G.").unwrap_err();
        assert!(err.to_string().contains("missing start"), "{err}");
    }

    #[test]
    fn rejects_malformed() {
        let cases = [
            ("B.\n.G.\n", "line 2"),
            ("B.\nGB\n", "duplicate start"),
            ("B.\n.x\n.G\n", "unknown character"),
            ("B. \n.G\n", "trailing whitespace"),
            ("B.\r\n.G\n", "trailing whitespace"),
            ("# colour: red\nB.\n.G\n", "unknown header"),
            ("B.\n# name: x\n.G\n", "header line after"),
            ("", "no map rows"),
        ];
        for (doc, needle) in cases {
            let err = load_map(doc).unwrap_err().to_string();
            assert!(err.contains(needle), "{doc:?}: {err}");
        }
    }

    #[test]
    fn unknown_error_names_position() {
        match load_map("B..\n.z.\n..G\n").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 2)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn headers_round_trip() {
        let doc = "# name: lab\n# edge_cm: 15.8\nB#?\n..G\n";
        let m = load_map(doc).unwrap();
        assert_eq!(m.name.as_deref(), Some("lab"));
        assert_eq!(m.edge_cm, Some(15.8));
        assert_eq!(m.kind(HexCoord::new(1, 1)), Some(CellKind::Obstacle));
        assert_eq!(m.kind(HexCoord::new(0, 2)), Some(CellKind::Unknown));
        assert_eq!(render_ascii(&m), doc);
    }

    #[test]
    fn empty_obstacle_map_renders_only_free_and_endpoints() {
        let m = load_map("B...\n....\n...G\n").unwrap();
        assert!(render_ascii(&m).chars().all(|c| matches!(c, '.' | 'B' | 'G' | '\n')));
    }

    #[test]
    fn indexer_round_trip() {
        let ix = CellIndexer { n_rows: 5, m_cols: 4 };
        for k in 0..ix.len() {
            let c = ix.coord_of(k);
            assert!(c.has_valid_parity());
            assert_eq!(ix.index_of(c), Some(k));
        }
        assert_eq!(ix.index_of(HexCoord::new(1, 0)), None);
        assert_eq!(ix.index_of(HexCoord::new(-2, 0)), None);
        assert_eq!(ix.index_of(HexCoord::new(10, 0)), None);
        assert_eq!(ix.index_of(HexCoord::new(9, 1)), Some(4 * 4 + 1));
    }

    #[test]
    fn wall_adjacency() {
        let m = load_map("B...\n....\n....\n...G\n").unwrap();
        assert!(m.is_wall_adjacent(m.start()));
        assert!(!m.is_wall_adjacent(HexCoord::new(3, 1)));
    }
}
