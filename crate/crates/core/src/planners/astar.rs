use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::hexgrid::{cell_center, HexCoord, HexMap};
use crate::planners::bfs::rebuild;
use crate::planners::{Path, SearchStats};

#[derive(Debug, Clone, Copy)]
struct Open {
    f: f64,
    seq: u64,
    g: u32,
    cell: HexCoord,
}

// Min-heap on (f, insertion order).
impl Ord for Open {
    fn cmp(&self, other: &Self) -> Ordering {
        other.f.total_cmp(&self.f).then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Open {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Open {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Open {}

/// A* with unit move costs and the Euclidean distance between cell
/// centres, measured in hops of `sqrt(3) * edge_cm`.
pub fn astar(map: &HexMap, edge_cm: f64) -> Option<Path> {
    astar_with_stats(map, edge_cm).0
}

pub fn astar_with_stats(map: &HexMap, edge_cm: f64) -> (Option<Path>, SearchStats) {
    assert!(edge_cm > 0.0, "edge length must be positive");
    let mut stats = SearchStats::default();
    let (start, goal) = (map.start(), map.goal());
    let hop = 3f64.sqrt() * edge_cm;
    let (gx, gy) = cell_center(goal, edge_cm);
    let h = |c: HexCoord| {
        let (x, y) = cell_center(c, edge_cm);
        (x - gx).hypot(y - gy) / hop
    };

    let n = map.n_cells();
    let mut best_g = vec![u32::MAX; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut closed = vec![false; n];
    let start_k = map.index_of(start).expect("start lies on the map");
    best_g[start_k] = 0;
    parent[start_k] = Some(start_k);
    let mut seq = 0;
    let mut heap = BinaryHeap::from([Open {
        f: h(start),
        seq,
        g: 0,
        cell: start,
    }]);

    while let Some(Open { g, cell, .. }) = heap.pop() {
        let ck = map.index_of(cell).expect("open cells lie on the map");
        if closed[ck] || g > best_g[ck] {
            continue;
        }
        closed[ck] = true;
        stats.expanded += 1;
        if cell == goal {
            break;
        }
        for (_, nb) in cell.neighbors() {
            if !map.is_free(nb) {
                continue;
            }
            let k = map.index_of(nb).expect("free cells lie on the map");
            if closed[k] || g + 1 >= best_g[k] {
                continue;
            }
            best_g[k] = g + 1;
            parent[k] = Some(ck);
            seq += 1;
            heap.push(Open {
                f: f64::from(g + 1) + h(nb),
                seq,
                g: g + 1,
                cell: nb,
            });
        }
    }
    (rebuild(map, &parent, start_k, goal), stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::load_map;
    use crate::planners::bfs_with_stats;

    #[test]
    fn corridor_expands_no_more_than_bfs() {
        let map = load_map("B......\n.......\n......G\n").unwrap();
        let (a, sa) = astar_with_stats(&map, 1.0);
        let (b, sb) = bfs_with_stats(&map, None);
        assert_eq!(a.unwrap().len(), b.unwrap().len());
        assert!(sa.expanded <= sb.expanded);
    }

    #[test]
    fn unsolvable() {
        let map = load_map("B.#.\n..#G\n..##\n").unwrap();
        assert!(astar(&map, 2.0).is_none());
    }
}
