//! Doubled-coordinate hexagonal geometry and map representation.

mod coord;
mod map;

pub use coord::{cell_center, k_ring, rasterize_dims, step_distance, AbsDir, HexCoord};
pub use map::{load_map, render_ascii, CellIndexer, CellKind, HexMap, Terrain};
