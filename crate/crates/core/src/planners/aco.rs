//! Ant colony search on the free cells of a map.
//!
//! Each ant walks from the start, never revisiting a cell, choosing among
//! free neighbours with weight `tau^alpha * (1 / d)^beta` where `d` is the
//! step distance to the goal. An ant next to the goal steps onto it. Ants
//! that run out of moves are dropped. After every iteration all trails
//! evaporate by `rho` and the best path so far gets `q / len` on each of
//! its edges, in both directions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hexgrid::{step_distance, AbsDir, HexMap};
use crate::planners::Path;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcoParams {
    pub n_ants: usize,
    pub iterations: usize,
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub q: f64,
    pub seed: u64,
}

impl Default for AcoParams {
    fn default() -> Self {
        Self {
            n_ants: 100,
            iterations: 200,
            alpha: 1.0,
            beta: 2.0,
            rho: 0.5,
            q: 100.0,
            seed: 0,
        }
    }
}

impl AcoParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_ants == 0 || self.iterations == 0 {
            return Err(Error::Config("aco needs at least one ant and one iteration".into()));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::Config("aco evaporation rho must be in (0, 1)".into()));
        }
        if !(self.q > 0.0 && self.alpha >= 0.0 && self.beta >= 0.0) {
            return Err(Error::Config("aco weights must be >= 0 and q > 0".into()));
        }
        Ok(())
    }
}

const TAU0: f64 = 1.0;

pub fn aco(map: &HexMap, params: &AcoParams) -> Result<Path> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = map.n_cells();
    let mut tau = vec![TAU0; n * 6];
    let mut best: Option<Vec<usize>> = None;
    let goal = map.goal();
    let goal_k = map.index_of(goal).expect("goal lies on the map");
    let start_k = map.index_of(map.start()).expect("start lies on the map");

    let mut visited = vec![u32::MAX; n];
    let mut stamp = 0u32;
    for _ in 0..params.iterations {
        for _ in 0..params.n_ants {
            stamp = stamp.wrapping_add(1);
            let mut tour = vec![start_k];
            visited[start_k] = stamp;
            let mut here = start_k;
            while here != goal_k {
                let c = map.coord_of(here);
                let mut options: Vec<(usize, f64)> = Vec::with_capacity(6);
                let mut direct = None;
                for d in AbsDir::ALL {
                    let nb = c.neighbor(d);
                    if !map.is_free(nb) {
                        continue;
                    }
                    let k = map.index_of(nb).expect("free cells lie on the map");
                    if k == goal_k {
                        direct = Some(k);
                        break;
                    }
                    if visited[k] == stamp {
                        continue;
                    }
                    let eta = 1.0 / f64::from(step_distance(nb, goal));
                    let w = tau[here * 6 + d.index()].powf(params.alpha) * eta.powf(params.beta);
                    options.push((k, w));
                }
                let next = match direct {
                    Some(k) => k,
                    None if options.is_empty() => break,
                    None => pick(&options, &mut rng),
                };
                visited[next] = stamp;
                tour.push(next);
                here = next;
            }
            if here != goal_k {
                continue;
            }
            if best.as_ref().is_none_or(|b| tour.len() < b.len()) {
                best = Some(tour);
            }
        }

        for t in &mut tau {
            *t *= 1.0 - params.rho;
        }
        if let Some(b) = &best {
            let deposit = params.q / (b.len() - 1) as f64;
            for w in b.windows(2) {
                let (a, z) = (map.coord_of(w[0]), map.coord_of(w[1]));
                let d = a.direction_to(z).expect("tour cells are adjacent");
                tau[w[0] * 6 + d.index()] += deposit;
                tau[w[1] * 6 + d.opposite().index()] += deposit;
            }
        }
    }

    best.map(|b| Path {
        states: b.into_iter().map(|k| map.coord_of(k)).collect(),
    })
    .ok_or(Error::NoPathConstructed {
        iterations: params.iterations,
    })
}

fn pick(options: &[(usize, f64)], rng: &mut ChaCha8Rng) -> usize {
    let total: f64 = options.iter().map(|o| o.1).sum();
    let mut u = rng.gen::<f64>() * total;
    for &(k, w) in options {
        if u < w {
            return k;
        }
        u -= w;
    }
    options[options.len() - 1].0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgrid::load_map;

    #[test]
    fn two_cells() {
        let map = load_map("BG\n").unwrap();
        let p = aco(&map, &AcoParams { iterations: 1, ..Default::default() }).unwrap();
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn dead_ends_only() {
        let map = load_map("B.#.\n..#G\n..##\n").unwrap();
        let params = AcoParams { iterations: 2, n_ants: 5, ..Default::default() };
        assert!(matches!(aco(&map, &params), Err(Error::NoPathConstructed { iterations: 2 })));
    }
}
