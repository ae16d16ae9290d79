use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hexnav::harness::random_map;
use hexnav::hexgrid::{load_map, AbsDir, HexCoord, HexMap};
use hexnav::learners::{
    count_bonus, q_update, select_epsilon_greedy, softmax_probs, train, train_env, Algo,
    PledgeParams, QTable, RurlConfig, Schedule, Strategy,
};
use hexnav::navenv::{DoneCause, NavEnv, Transition, COLLISION_REWARD, GOAL_REWARD, STEP_REWARD};
use hexnav::planners::bfs_shortest;
use hexnav::wallrules::ReducedSpace;

fn open_room(n: usize) -> HexMap {
    let mut rows: Vec<String> = (0..n).map(|_| ".".repeat(n)).collect();
    rows[0].replace_range(0..1, "B");
    rows[n - 1].replace_range(n - 1..n, "G");
    load_map(&(rows.join("\n") + "\n")).unwrap()
}

fn cfg(strategy: Strategy, algo: Algo, seed: u64) -> RurlConfig {
    RurlConfig {
        k: 2,
        pledge: PledgeParams {
            episodes: 20,
            omega: 0.2,
            b: 8.0,
        },
        m_max: 2000,
        t_max: 150,
        alpha: 0.2,
        gamma: 0.95,
        algo,
        strategy,
        seed,
    }
}

#[test]
fn td_updates_reach_the_fixed_point_of_a_chain() {
    // A -> B -> G along SE, NE with step reward -1 and goal reward 100.
    let map = load_map("B.G\n...\n").unwrap();
    let a = map.start();
    let b = a.neighbor(AbsDir::SE);
    let g = b.neighbor(AbsDir::NE);
    assert_eq!(g, map.goal());
    let mut t = QTable::new(map.indexer());
    let first = Transition {
        state: a,
        action: AbsDir::SE,
        reward: STEP_REWARD,
        next_state: b,
        done: None,
    };
    let second = Transition {
        state: b,
        action: AbsDir::NE,
        reward: GOAL_REWARD,
        next_state: g,
        done: Some(DoneCause::Goal),
    };
    for _ in 0..400 {
        q_update(&mut t, &first, 0.3, 0.9);
        q_update(&mut t, &second, 0.3, 0.9);
    }
    assert!((t.get(b, AbsDir::NE) - 100.0).abs() < 1e-6);
    assert!((t.get(a, AbsDir::SE) - 89.0).abs() < 1e-6);
}

#[test]
fn episode_accounting_matches_step_calls() {
    let map = open_room(4);
    let mut env = NavEnv::new(&map, 30).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        env.reset();
        let mut calls = 0;
        loop {
            let t = env.step(AbsDir::from_index(rng.gen_range(0..6))).unwrap();
            calls += 1;
            if t.done.is_some() {
                break;
            }
        }
        assert_eq!(calls, env.steps_in_episode());
        assert!(calls <= 30);
    }
    assert!(env.step(AbsDir::N).is_err());
}

#[test]
fn pledge_with_zero_episodes_equals_disabled() {
    let map = open_room(5);
    let mut c = cfg(Strategy::EpsilonGreedy(Schedule::constant(0.3)), Algo::QLearning, 4);
    c.pledge.episodes = 0;
    let a = train(&map, &c, true, true).unwrap();
    let b = train(&map, &c, true, false).unwrap();
    assert_eq!(a.steps_per_episode, b.steps_per_episode);
    assert_eq!(a.q_table, b.q_table);
    assert!(a.pledge_used.iter().all(|&u| !u));
}

#[test]
fn greedy_behaviour_makes_sarsa_and_q_learning_coincide() {
    let map = load_map("B....\n..#..\n..#..\n....G\n").unwrap();
    let greedy = Strategy::EpsilonGreedy(Schedule::constant(0.0));
    let q = train(&map, &cfg(greedy, Algo::QLearning, 8), false, false).unwrap();
    let s = train(&map, &cfg(greedy, Algo::Sarsa, 8), false, false).unwrap();
    assert_eq!(q.steps_per_episode, s.steps_per_episode);
    assert_eq!(q.q_table, s.q_table);
}

#[test]
fn equal_seeds_give_identical_results_for_every_strategy() {
    let map = load_map("B.....\n..##..\n......\n.....G\n").unwrap();
    for strategy in [
        Strategy::EpsilonGreedy(Schedule::exp(0.01)),
        Strategy::Softmax(Schedule::rational(35.0, 0.011, 1.0).with_cutoff(100, 1.0)),
        Strategy::CountBased {
            beta: 0.4,
            epsilon: Schedule::exp(0.01),
        },
        Strategy::Ucb { d: 0.9, c: 0.01 },
    ] {
        for rules in [false, true] {
            let c = cfg(strategy, Algo::Sarsa, 21);
            let a = train(&map, &c, rules, rules).unwrap();
            let b = train(&map, &c, rules, rules).unwrap();
            assert_eq!(a.steps_per_episode, b.steps_per_episode);
            assert_eq!(a.pledge_used, b.pledge_used);
            assert_eq!(a.q_table, b.q_table);
            assert_eq!(a.greedy_path, b.greedy_path);
        }
    }
}

#[test]
fn pledge_phase_is_limited_to_the_first_episodes() {
    let map = load_map("B.......\n.######.\n.#....#.\n.#.##.#.\n...#G...\n").unwrap();
    let mut c = cfg(Strategy::EpsilonGreedy(Schedule::constant(1.0)), Algo::QLearning, 2);
    c.m_max = 400;
    c.pledge = PledgeParams {
        episodes: 10,
        omega: 0.0,
        b: 100.0,
    };
    let r = train(&map, &c, true, true).unwrap();
    assert!(r.pledge_used[..10].iter().any(|&u| u));
    assert!(r.pledge_used[10..].iter().all(|&u| !u));
}

#[test]
fn five_by_five_room_converges_to_the_shortest_path() {
    let map = open_room(5);
    let best = bfs_shortest(&map, None).unwrap().len();
    let c = RurlConfig {
        t_max: 2000,
        m_max: 1000,
        alpha: 0.1,
        gamma: 0.99,
        ..cfg(
            Strategy::EpsilonGreedy(Schedule::exp(0.005).with_cutoff(1500, 0.0)),
            Algo::QLearning,
            3,
        )
    };
    let r = train(&map, &c, false, false).unwrap();
    assert!(r.converged);
    assert_eq!(r.greedy_path.steps(), best);
}

#[test]
fn count_bonus_decreases_with_visits() {
    let mut last = f64::INFINITY;
    for n in 1..200 {
        let b = count_bonus(n, 0.4).unwrap();
        assert!(b > 0.0 && b < last);
        last = b;
    }
    assert!(count_bonus(0, 0.4).is_err());
}

fn q_values() -> impl proptest::strategy::Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-500.0f64..500.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn softmax_sums_to_one_and_ignores_shifts(q in q_values(), shift in -1e3f64..1e3, tau in 0.05f64..100.0) {
        let p = softmax_probs(&q, tau);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let shifted = q.map(|x| x + shift);
        let r = softmax_probs(&shifted, tau);
        for k in 0..6 {
            prop_assert!((p[k] - r[k]).abs() < 1e-9);
        }
    }

    #[test]
    fn greedy_choice_ignores_positive_scaling(q in q_values(), scale in 0.01f64..100.0, seed in any::<u64>()) {
        let map = open_room(3);
        let s = map.start();
        let mut a = QTable::new(map.indexer());
        let mut b = QTable::new(map.indexer());
        for d in AbsDir::ALL {
            a.set(s, d, q[d.index()]);
            b.set(s, d, q[d.index()] * scale);
        }
        let mut r1 = ChaCha8Rng::seed_from_u64(seed);
        let mut r2 = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(
            select_epsilon_greedy(&a, s, 0.0, &mut r1),
            select_epsilon_greedy(&b, s, 0.0, &mut r2)
        );
    }

    #[test]
    fn restricted_env_never_leaves_the_region(seed in any::<u64>(), k in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let map = random_map(&mut rng, 12, 12, 0.25).unwrap();
        let space = ReducedSpace::build(&map, k).unwrap();
        let mut env = NavEnv::restrict(&map, &space.region, 300).unwrap();
        let mut pos = env.reset();
        loop {
            let t = env.step(AbsDir::from_index(rng.gen_range(0..6))).unwrap();
            prop_assert_eq!(t.state, pos);
            prop_assert!(space.region.contains(t.next_state));
            if t.bounced() {
                prop_assert_eq!(t.next_state, t.state);
                prop_assert_eq!(t.reward, COLLISION_REWARD);
            } else {
                prop_assert_eq!(t.state.neighbor(t.action), t.next_state);
            }
            pos = t.next_state;
            if t.done.is_some() {
                break;
            }
        }
    }

    #[test]
    fn training_in_a_prepared_env_matches_train(seed in 0u64..50) {
        let map = open_room(4);
        let c = cfg(Strategy::EpsilonGreedy(Schedule::constant(0.2)), Algo::QLearning, seed);
        let mut env = NavEnv::new(&map, c.m_max).unwrap();
        let a = train_env(&mut env, &c, false).unwrap();
        let b = train(&map, &c, false, false).unwrap();
        prop_assert_eq!(a.steps_per_episode, b.steps_per_episode);
    }
}

#[test]
fn greedy_path_stays_inside_the_map() {
    let map = open_room(4);
    let c = cfg(Strategy::EpsilonGreedy(Schedule::constant(0.2)), Algo::QLearning, 1);
    let r = train(&map, &c, true, true).unwrap();
    assert!(r.greedy_path.states.iter().all(|&s: &HexCoord| map.is_free(s)));
    assert_eq!(r.total_steps, r.steps_per_episode.iter().map(|&s| s as u64).sum::<u64>());
}
