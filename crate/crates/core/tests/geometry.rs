use std::collections::{HashMap, HashSet, VecDeque};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hexnav::harness::random_map;
use hexnav::hexgrid::{
    cell_center, k_ring, load_map, rasterize_dims, render_ascii, step_distance, AbsDir, HexCoord,
};

/// Distances from `origin` on the unbounded lattice by breadth-first search.
fn lattice_bfs(origin: HexCoord, radius: u32) -> HashMap<HexCoord, u32> {
    let mut dist = HashMap::from([(origin, 0)]);
    let mut queue = VecDeque::from([origin]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        if d == radius {
            continue;
        }
        for (_, nb) in c.neighbors() {
            dist.entry(nb).or_insert_with(|| {
                queue.push_back(nb);
                d + 1
            });
        }
    }
    dist
}

fn valid_coord() -> impl Strategy<Value = HexCoord> {
    (-60i32..60, -60i32..60).prop_map(|(i, j)| HexCoord::new(i + (i + j).rem_euclid(2), j))
}

#[test]
fn distance_matches_lattice_bfs_within_radius_12() {
    let origin = HexCoord::new(4, 2);
    for (c, d) in lattice_bfs(origin, 12) {
        assert_eq!(step_distance(origin, c), d, "{c}");
        assert_eq!(step_distance(c, origin), d, "{c}");
    }
}

#[test]
fn rings_partition_the_bfs_ball() {
    let origin = HexCoord::new(0, 0);
    let ball = lattice_bfs(origin, 5);
    for k in 1..=5u32 {
        let ring: HashSet<HexCoord> = k_ring(origin, k).into_iter().collect();
        assert_eq!(ring.len(), 6 * k as usize);
        let expected: HashSet<HexCoord> =
            ball.iter().filter(|(_, &d)| d == k).map(|(&c, _)| c).collect();
        assert_eq!(ring, expected, "K = {k}");
    }
}

#[test]
fn ring_of_two_around_origin() {
    let ring: HashSet<HexCoord> = k_ring(HexCoord::new(10, 10), 2).into_iter().collect();
    for (di, dj) in [
        (-4, 0),
        (-3, 1),
        (-2, 2),
        (0, 2),
        (2, 2),
        (3, 1),
        (4, 0),
        (3, -1),
        (2, -2),
        (0, -2),
        (-2, -2),
        (-3, -1),
    ] {
        assert!(ring.contains(&HexCoord::new(10 + di, 10 + dj)), "({di},{dj})");
    }
}

#[test]
fn rasterize_room_and_multiroom() {
    assert_eq!(rasterize_dims(465.0, 458.0, 15.8).unwrap(), (35, 19));
    assert_eq!(rasterize_dims(1640.0, 1960.0, 22.02).unwrap(), (87, 59));
    assert!(rasterize_dims(0.0, 458.0, 15.8).is_err());
    assert!(rasterize_dims(465.0, 458.0, -1.0).is_err());
}

#[test]
fn direction_offsets_are_opposite_pairs() {
    for d in AbsDir::ALL {
        let (a, b) = d.offset();
        let (c, e) = d.opposite().offset();
        assert_eq!((a + c, b + e), (0, 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn neighbors_keep_parity(c in valid_coord()) {
        for (_, nb) in c.neighbors() {
            prop_assert!(nb.has_valid_parity());
            prop_assert_eq!(step_distance(c, nb), 1);
        }
    }

    #[test]
    fn ring_cells_keep_parity_and_distance(c in valid_coord(), k in 1u32..=5) {
        let ring = k_ring(c, k);
        prop_assert_eq!(ring.len(), 6 * k as usize);
        let unique: HashSet<_> = ring.iter().collect();
        prop_assert_eq!(unique.len(), ring.len());
        for r in ring {
            prop_assert!(r.has_valid_parity());
            prop_assert_eq!(step_distance(c, r), k);
        }
    }

    #[test]
    fn metric_axioms(a in valid_coord(), b in valid_coord(), c in valid_coord()) {
        prop_assert_eq!(step_distance(a, b), step_distance(b, a));
        prop_assert_eq!(step_distance(a, a), 0);
        prop_assert!(a == b || step_distance(a, b) > 0);
        prop_assert!(step_distance(a, c) <= step_distance(a, b) + step_distance(b, c));
    }

    #[test]
    fn neighbors_are_equidistant(c in valid_coord(), edge in 0.5f64..50.0) {
        let (x, y) = cell_center(c, edge);
        for (_, nb) in c.neighbors() {
            let (u, v) = cell_center(nb, edge);
            prop_assert!(((u - x).hypot(v - y) - 3f64.sqrt() * edge).abs() < 1e-9);
        }
    }

    #[test]
    fn distance_is_one_more_than_a_greedy_neighbor(a in valid_coord(), b in valid_coord()) {
        prop_assume!(a != b);
        let best = a.neighbors().iter().map(|&(_, n)| step_distance(n, b)).min().unwrap();
        prop_assert_eq!(best + 1, step_distance(a, b));
    }

    #[test]
    fn map_documents_round_trip(seed in any::<u64>(), n in 2usize..14, m in 2usize..14, d in 0.0f64..0.3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = random_map(&mut rng, n, m, d).unwrap().with_name("rt").with_edge_cm(12.5);
        let text = render_ascii(&map);
        let back = load_map(&text).unwrap();
        prop_assert_eq!(&back, &map);
        prop_assert_eq!(render_ascii(&back), text);
    }
}

#[test]
fn distance_agrees_with_bfs_on_ten_thousand_pairs() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let origin = HexCoord::new(0, 0);
    let ball = lattice_bfs(origin, 40);
    for _ in 0..10_000 {
        let i: i32 = rng.gen_range(-40..=40);
        let j: i32 = rng.gen_range(-40..=40);
        let c = HexCoord::new(i + (i + j).rem_euclid(2), j);
        if let Some(&d) = ball.get(&c) {
            assert_eq!(step_distance(origin, c), d);
        } else {
            assert!(step_distance(origin, c) > 40);
        }
    }
}
