//! The training loop, with or without the rule-based pipeline.
//!
//! Episodes are numbered from zero. When the Pledge phase is enabled, the
//! first `pledge.episodes` episodes hand control to the Pledge rule once an
//! episode has used `pledge_threshold(e, ..)` steps; the rule alternates
//! counterclockwise (even `e`) and clockwise (odd `e`). Value updates run on
//! every step whoever chose the action.
//!
//! Both learners pick the next action before updating the current pair, so
//! with a greedy behaviour policy their traces coincide.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hexgrid::{AbsDir, HexCoord, HexMap, Terrain};
use crate::learners::{
    count_bonus, pledge_threshold, q_update, sarsa_update, select_epsilon_greedy, select_softmax,
    select_ucb, QTable, Strategy,
};
use crate::navenv::{DoneCause, NavEnv};
use crate::planners::bfs_shortest;
use crate::wallrules::{pledge_action, Chirality, PledgeState, ReducedSpace, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algo {
    QLearning,
    Sarsa,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PledgeParams {
    /// Number of leading episodes in which the rule may take over.
    pub episodes: usize,
    pub omega: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RurlConfig {
    pub k: u32,
    pub pledge: PledgeParams,
    pub m_max: usize,
    pub t_max: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub algo: Algo,
    pub strategy: Strategy,
    pub seed: u64,
}

impl RurlConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Config(m.into()));
        if self.k == 0 {
            return fail("k must be >= 1");
        }
        if self.m_max == 0 || self.t_max == 0 {
            return fail("m_max and t_max must be >= 1");
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return fail("alpha must be in (0, 1]");
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return fail("gamma must be in [0, 1)");
        }
        if !(self.pledge.omega >= 0.0 && self.pledge.b > 0.0) {
            return fail("pledge omega must be >= 0 and b > 0");
        }
        self.strategy.validate()
    }
}

#[derive(Debug, Clone)]
pub struct TrainResult {
    pub steps_per_episode: Vec<usize>,
    /// Whether the Pledge rule chose at least one action in the episode.
    pub pledge_used: Vec<bool>,
    pub total_steps: u64,
    /// Greedy rollout from the start. Ends early when it revisits a cell or
    /// bumps into a wall; `converged` is then false.
    pub greedy_path: Trajectory,
    pub converged: bool,
    pub q_table: QTable,
}

/// Per-run seed: SplitMix64 output number `run + 1` of a generator seeded
/// with `root`.
pub fn seed_for_run(root: u64, run: usize) -> u64 {
    let mut z = root.wrapping_add((run as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Train on `map`. With `rules_enabled` the agent is confined to the region
/// enclosed by the reduced wall-following trajectories.
pub fn train(
    map: &HexMap,
    cfg: &RurlConfig,
    rules_enabled: bool,
    pledge_enabled: bool,
) -> Result<TrainResult> {
    cfg.validate()?;
    if bfs_shortest(map, None).is_none() {
        return Err(Error::Unsolvable {
            start: map.start(),
            goal: map.goal(),
        });
    }
    if rules_enabled {
        let space = ReducedSpace::build(map, cfg.k)?;
        let mut env = NavEnv::restrict(map, &space.region, cfg.m_max)?;
        train_env(&mut env, cfg, pledge_enabled)
    } else {
        let mut env = NavEnv::new(map, cfg.m_max)?;
        train_env(&mut env, cfg, pledge_enabled)
    }
}

struct Chooser<'c> {
    cfg: &'c RurlConfig,
    pledge: Option<PledgeState>,
    pledge_allowed: bool,
    threshold: f64,
    episode: usize,
    used_pledge: bool,
}

impl Chooser<'_> {
    fn choose(
        &mut self,
        env: &NavEnv,
        table: &QTable,
        s: HexCoord,
        rng: &mut ChaCha8Rng,
    ) -> Result<AbsDir> {
        if self.pledge_allowed && env.steps_in_episode() as f64 >= self.threshold {
            let st = self.pledge.unwrap_or_else(|| {
                let chirality = if self.episode % 2 == 0 {
                    Chirality::Counterclockwise
                } else {
                    Chirality::Clockwise
                };
                PledgeState::new(chirality, AbsDir::N)
            });
            let (a, next) = pledge_action(env, s, st)?;
            self.pledge = Some(next);
            self.used_pledge = true;
            return Ok(a);
        }
        let e = self.episode;
        Ok(match self.cfg.strategy {
            Strategy::EpsilonGreedy(eps) | Strategy::CountBased { epsilon: eps, .. } => {
                select_epsilon_greedy(table, s, eps.value(e).clamp(0.0, 1.0), rng)
            }
            Strategy::Softmax(tau) => select_softmax(table, s, tau.value(e), rng),
            Strategy::Ucb { c, .. } => select_ucb(table, s, c),
        })
    }
}

/// Train in a prepared environment.
pub fn train_env(env: &mut NavEnv, cfg: &RurlConfig, pledge_enabled: bool) -> Result<TrainResult> {
    cfg.validate()?;
    let map = env.map();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut table = QTable::new(map.indexer());
    let mut steps_per_episode = Vec::with_capacity(cfg.t_max);
    let mut pledge_used = Vec::with_capacity(cfg.t_max);

    for episode in 0..cfg.t_max {
        let mut chooser = Chooser {
            cfg,
            pledge: None,
            pledge_allowed: pledge_enabled && episode < cfg.pledge.episodes,
            threshold: pledge_threshold(episode, cfg.m_max, cfg.pledge.omega, cfg.pledge.b),
            episode,
            used_pledge: false,
        };
        let mut s = env.reset();
        let mut a = chooser.choose(env, &table, s, &mut rng)?;
        loop {
            let mut t = env.step(a)?;
            let n = table.record_visit(s, a);
            if let Strategy::Ucb { d, .. } = cfg.strategy {
                table.record_discounted_visit(s, a, d);
            }
            if let Strategy::CountBased { beta, .. } = cfg.strategy {
                t.reward += count_bonus(n, beta)?;
            }
            let next = match t.done {
                None => Some(chooser.choose(env, &table, t.next_state, &mut rng)?),
                Some(_) => None,
            };
            match (cfg.algo, next) {
                (Algo::Sarsa, Some(a2)) => sarsa_update(&mut table, &t, a2, cfg.alpha, cfg.gamma),
                _ => q_update(&mut table, &t, cfg.alpha, cfg.gamma),
            }
            match next {
                Some(a2) => {
                    s = t.next_state;
                    a = a2;
                }
                None => break,
            }
        }
        debug_assert!(matches!(env.done(), Some(DoneCause::Goal | DoneCause::StepLimit)));
        steps_per_episode.push(env.steps_in_episode());
        pledge_used.push(chooser.used_pledge);
    }

    let free = map.free_count();
    let (greedy_path, converged) = greedy_rollout(&table, &*env, map.start(), map.goal(), free);
    Ok(TrainResult {
        total_steps: steps_per_episode.iter().map(|&s| s as u64).sum(),
        steps_per_episode,
        pledge_used,
        greedy_path,
        converged,
        q_table: table,
    })
}

/// Follow the greedy action from `start` for at most `cap` moves.
pub fn greedy_rollout(
    table: &QTable,
    terrain: &impl Terrain,
    start: HexCoord,
    goal: HexCoord,
    cap: usize,
) -> (Trajectory, bool) {
    let mut seen = std::collections::HashSet::from([start]);
    let mut states = vec![start];
    let mut actions = Vec::new();
    let mut pos = start;
    while pos != goal && actions.len() < cap {
        let a = table.argmax(pos);
        let next = pos.neighbor(a);
        if !terrain.passable(next) || !seen.insert(next) {
            break;
        }
        pos = next;
        states.push(pos);
        actions.push(a);
    }
    (Trajectory { states, actions }, pos == goal)
}
